"""Exit codes, formats and determinism of the atomslit command line."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def expect(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def expect_code(name, args, code):
    r = run(*args)
    expect(name, r.returncode == code, f"exit {r.returncode}, stderr: {r.stderr.strip()}")
    return r


r = expect_code("pattern default", ["pattern"], 0)
lines = r.stdout.splitlines()
expect("pattern csv header", "phi,intensity" in lines)
expect("pattern csv rows", len(lines) - lines.index("phi,intensity") - 1 == 256)
expect("pattern deterministic", run("pattern").stdout == r.stdout)

r = expect_code("pattern json", ["pattern", "--config", "C1", "--pulse", "long", "--beta", "0.5",
                                 "--format", "json", "--samples", "32"], 0)
j = json.loads(r.stdout)
expect("json visibility", abs(j["visibility"] - 0.5) < 1e-9)
expect("json key order", list(j) == ["meta", "pattern", "visibility", "phase_offset", "condition",
                                     "post_selection_probability"])
r = expect_code("dispersive", ["pattern", "--config", "C1", "--pulse", "long", "--beta", "0.5",
                               "--dispersive", "SHIFTED", "--format", "json"], 0)
expect("dispersive restores visibility", abs(json.loads(r.stdout)["visibility"] - 1) < 1e-9)

r = expect_code("eraser coincidence", ["pattern", "--config", "B", "--beta", "0.3", "--treatment", "first",
                                       "--eraser", "--coincidence", "atom2_excited", "--format", "json"], 0)
j = json.loads(r.stdout)
expect("eraser coincidence visibility", abs(j["visibility"] - 1) < 1e-9)
expect("eraser coincidence probability", abs(j["post_selection_probability"] - 0.045) < 1e-9)

r = expect_code("sweep", ["sweep", "--config", "B", "--beta-range", "0:0.3:7", "--threads", "1"], 0)
expect("sweep header", "beta,visibility_exact,visibility_first_order,oracle,deviation,"
       "post_selection_probability" in r.stdout.splitlines())
expect("sweep thread independence",
       run("sweep", "--config", "B", "--beta-range", "0:0.3:7", "--threads", "3").stdout == r.stdout)
r = expect_code("sweep E", ["sweep", "--config", "E", "--coupling", "1", "--beta-range", "0:0.5:3",
                            "--format", "json"], 0)
rows = json.loads(r.stdout)["rows"]
expect("sweep E has no exact column", all(row["visibility_exact"] is None for row in rows))

r = expect_code("whichway", ["whichway", "--beta", "1", "--delta", "1"], 0)
j = json.loads(r.stdout)
expect("whichway p_minus", abs(j["oracle"]["p_minus"] - 0.0183156388887342) < 1e-12, str(j.get("oracle")))
expect_code("whichway csv", ["whichway", "--beta", "1", "--delta", "1", "--format", "csv"], 0)

with tempfile.TemporaryDirectory() as tmp:
    spec = os.path.join(tmp, "scenario.txt")
    with open(spec, "w") as f:
        f.write("# C1 long\nconfig=C1\npulse=long\nbeta=0.5\n")
    r = expect_code("spec file", ["pattern", "--spec", spec, "--format", "json"], 0)
    expect("spec file visibility", abs(json.loads(r.stdout)["visibility"] - 0.5) < 1e-9)
    r = expect_code("spec file override", ["pattern", "--spec", spec, "--beta", "0", "--format", "json"], 0)
    expect("spec file override visibility", abs(json.loads(r.stdout)["visibility"] - 1) < 1e-9)
    out = os.path.join(tmp, "report.json")
    r = expect_code("report", ["report", "--out", out], 0)
    with open(out) as f:
        expect("report file", json.load(f)["all_passed"] is True)
    expect("report summary on stderr", r.stderr.count("[PASS]") == 9)

expect_code("help", ["--help"], 0)
expect_code("no subcommand", [], 2)
expect_code("unknown flag", ["pattern", "--colour", "red"], 2)
expect_code("bad config", ["pattern", "--config", "F"], 2)
expect_code("bad beta", ["pattern", "--beta", "abc"], 2)
expect_code("alpha outside D", ["pattern", "--config", "B", "--alpha", "1"], 2)
expect_code("coupling outside E", ["pattern", "--config", "B", "--coupling", "1"], 2)
expect_code("evolve time outside E short", ["pattern", "--config", "E", "--pulse", "long",
                                            "--evolve-time", "1"], 2)
expect_code("D long", ["pattern", "--config", "D", "--pulse", "long"], 2)
expect_code("E short exact", ["pattern", "--config", "E", "--treatment", "exact"], 2)
expect_code("eraser on C1", ["pattern", "--config", "C1", "--eraser"], 2)
expect_code("unknown projector", ["pattern", "--config", "B", "--coincidence", "left"], 2)
expect_code("projector on wrong space", ["pattern", "--config", "C1", "--coincidence", "sym"], 2)
expect_code("unknown tag", ["pattern", "--config", "C1", "--dispersive", "BLUE"], 2)
expect_code("few samples", ["pattern", "--samples", "8"], 2)
expect_code("epsilon out of range", ["pattern", "--epsilon", "0.5"], 2)
expect_code("empty beta range", ["sweep", "--beta-range", "0:1:0"], 2)
expect_code("negative whichway", ["whichway", "--beta", "-1", "--delta", "1"], 2)
expect_code("truncation", ["pattern", "--config", "B", "--beta", "3"], 3)
expect_code("perturbative regime", ["pattern", "--config", "C1", "--pulse", "long", "--beta", "0.8"], 3)
expect_code("empty post-selection", ["pattern", "--config", "B", "--coincidence", "atom1_excited"], 3)
expect_code("huge whichway", ["whichway", "--beta", "30", "--delta", "1"], 3)
expect_code("forced acceptance failure", ["report", "--tol-scale", "-1"], 4)

sys.exit(1 if failures else 0)
