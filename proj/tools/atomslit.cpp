// atomslit: double-slit interference with single trapped atoms as slits.
//
//   atomslit pattern  --config C1 --pulse long --beta 0.5 [--dispersive SHIFTED]
//   atomslit sweep    --config B --beta-range 0:0.3:31
//   atomslit whichway --beta 1 --delta 1
//   atomslit report   [--out report.json]
//
// Exit codes: 0 success, 2 flag error, 3 physics-domain error (truncation
// guard, empty post-selection), 4 acceptance failure.

#include "atomslit/acceptance.hpp"
#include "atomslit/errors.hpp"
#include "atomslit/numfmt.hpp"
#include "atomslit/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitFlag = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitAcceptance = 4;

struct ScenarioFlags {
  std::string spec_file;
  std::string config = "A";
  std::string pulse = "short";
  std::string treatment;
  std::string beta = "0";
  std::string alpha = "0";
  double epsilon = 0.01;
  double coupling = 0.0;
  double evolve_time = 0.0;
  bool eraser = false;
  std::vector<std::string> dispersive;
  std::string coincidence;
  std::size_t nmax = atomslit::kDefaultTruncation;

  CLI::Option* config_opt = nullptr;
  CLI::Option* pulse_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* epsilon_opt = nullptr;
  CLI::Option* coupling_opt = nullptr;
  CLI::Option* evolve_opt = nullptr;
  CLI::Option* treatment_opt = nullptr;
  CLI::Option* nmax_opt = nullptr;
};

struct OutputFlags {
  std::string format = "csv";
  std::string out;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f, bool with_beta) {
  app->add_option("--spec", f.spec_file, "Scenario file of key=value lines; flags override it");
  f.config_opt = app->add_option("--config", f.config, "Geometry: A, B, C1, C2, D, E")
                     ->check(CLI::IsMember({"A", "B", "C1", "C2", "D", "E"}, CLI::ignore_case));
  f.pulse_opt = app->add_option("--pulse", f.pulse, "short or long")
                    ->check(CLI::IsMember({"short", "long"}, CLI::ignore_case));
  f.treatment_opt =
      app->add_option("--treatment", f.treatment,
                      "exact (coherent states) or first (first order in beta); default exact, first for E")
          ->check(CLI::IsMember({"exact", "first"}, CLI::ignore_case));
  if (with_beta) {
    f.beta_opt = app->add_option("--beta", f.beta, "Recoil displacement: real, or (re,im)");
  }
  f.alpha_opt = app->add_option("--alpha", f.alpha, "Longitudinal displacement, config D only");
  f.epsilon_opt = app->add_option("--epsilon", f.epsilon, "Scattering amplitude in (0, 0.1]")->capture_default_str();
  f.coupling_opt = app->add_option("--coupling", f.coupling,
                                   "Spring coupling g between slits, config E only. The beat frequency "
                                   "is 2g and a quarter beat period is pi/(4g)");
  f.evolve_opt = app->add_option("--evolve-time", f.evolve_time,
                                 "Free evolution after the pulse, config E short pulse only");
  app->add_flag("--eraser", f.eraser, "Rotate |1,0>,|0,1> into the eraser basis (configs A, B, E)");
  app->add_option("--dispersive", f.dispersive, "Apply a pi path phase to tags ELASTIC,SHIFTED,SYM,ANTISYM")
      ->delimiter(',');
  app->add_option("--coincidence", f.coincidence,
                  "Condition on an atomic state: ground, atom1_excited, atom2_excited, "
                  "single_atom_0, single_atom_1, sym, antisym");
  f.nmax_opt = app->add_option("--nmax", f.nmax, "Fock truncation per mode")->capture_default_str();
}

void add_output_flags(CLI::App* app, OutputFlags& o) {
  app->add_option("--format", o.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", o.out, "Output path (default stdout)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read --spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const OutputFlags& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open --out '" + o.out + "' for writing");
  f << text;
}

std::pair<atomslit::ScenarioSpec, atomslit::Pipeline> resolve(const ScenarioFlags& f) {
  using namespace atomslit;
  ScenarioSpec spec = f.spec_file.empty() ? ScenarioSpec{} : ScenarioSpec::from_text(read_file(f.spec_file));
  const bool from_file = !f.spec_file.empty();
  if (f.config_opt->count() || !from_file) spec.config = parse_config(f.config);
  if (f.pulse_opt->count() || !from_file) spec.pulse = parse_pulse(f.pulse);
  if (f.beta_opt && (f.beta_opt->count() || !from_file)) spec.beta = parse_complex(f.beta);
  if (f.alpha_opt->count()) spec.alpha = parse_complex(f.alpha);
  if (f.epsilon_opt->count() || !from_file) spec.epsilon = f.epsilon;
  if (f.coupling_opt->count()) spec.coupling_g = f.coupling;
  if (f.evolve_opt->count()) spec.evolve_time = f.evolve_time;
  if (f.nmax_opt->count() || !from_file) spec.nmax = f.nmax;
  if (f.treatment_opt->count()) {
    spec.treatment = parse_treatment(f.treatment);
  } else if (!from_file) {
    spec.treatment = spec.config == Config::E ? Treatment::FirstOrder : Treatment::Exact;
  }

  if (f.alpha_opt->count() && spec.config != Config::D) {
    throw std::invalid_argument("--alpha is only meaningful for config D");
  }
  if (f.coupling_opt->count() && spec.config != Config::E) {
    throw std::invalid_argument("--coupling is only meaningful for config E");
  }
  if (f.evolve_opt->count() && !(spec.config == Config::E && spec.pulse == Pulse::Short)) {
    throw std::invalid_argument("--evolve-time is only meaningful for config E with a short pulse");
  }
  if (spec.config == Config::E && spec.pulse == Pulse::Short && spec.treatment == Treatment::Exact) {
    throw std::invalid_argument("--treatment exact is not available for config E short pulse");
  }
  if (spec.config == Config::D && spec.pulse == Pulse::Long) {
    throw std::invalid_argument("--pulse long is not defined for config D");
  }

  Pipeline pipeline;
  pipeline.eraser = f.eraser;
  for (const auto& t : f.dispersive) pipeline.dispersive.insert(parse_freq_tag(t));
  if (!f.coincidence.empty()) pipeline.coincidence = f.coincidence;
  return {spec, pipeline};
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Young's double slit with trapped-atom slits: fringe visibility and which-way information"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(atomslit::version()));

  ScenarioFlags pattern_flags;
  OutputFlags pattern_out;
  std::size_t samples = atomslit::kDefaultPatternSamples;
  auto* pattern_cmd = app.add_subcommand("pattern", "Sample the interference pattern I(phi) of one scenario");
  add_scenario_flags(pattern_cmd, pattern_flags, true);
  add_output_flags(pattern_cmd, pattern_out);
  pattern_cmd->add_option("--samples", samples, "Detector phases sampled over [0, 2pi)")->capture_default_str();

  ScenarioFlags sweep_flags;
  OutputFlags sweep_out;
  std::string beta_range;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Visibility versus beta, exact and first order, with the closed form");
  add_scenario_flags(sweep_cmd, sweep_flags, false);
  add_output_flags(sweep_cmd, sweep_out);
  sweep_cmd->add_option("--beta-range", beta_range, "MIN:MAX:STEPS (STEPS points, endpoints included)")
      ->required();
  sweep_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");

  double ww_beta = 0.0;
  double ww_delta = 0.0;
  std::size_t ww_nmax = atomslit::kDefaultTruncation;
  OutputFlags ww_out;
  ww_out.format = "json";
  auto* ww_cmd = app.add_subcommand("whichway", "Path discrimination by projecting the atom onto |delta>");
  ww_cmd->add_option("--beta", ww_beta, "Recoil displacement (>= 0)")->required();
  ww_cmd->add_option("--delta", ww_delta, "Probe coherent state (>= 0)")->required();
  ww_cmd->add_option("--nmax", ww_nmax, "Minimum Fock truncation")->capture_default_str();
  add_output_flags(ww_cmd, ww_out);

  std::string report_out;
  double tol_scale = 1.0;
  auto* report_cmd = app.add_subcommand("report", "Run the reproduction suite and emit a JSON summary");
  report_cmd->add_option("--out", report_out, "Output path (default stdout)");
  report_cmd->add_option("--tol-scale", tol_scale, "Multiply every tolerance (<= 0 forces failure)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFlag;
  }

  try {
    if (*pattern_cmd) {
      if (samples < atomslit::kMinPatternSamples) throw std::invalid_argument("--samples must be >= 16");
      const auto [spec, pipeline] = resolve(pattern_flags);
      const atomslit::PatternScan scan = atomslit::run_pattern(spec, pipeline, samples);
      write_output(pattern_out, pattern_out.format == "json"
                                    ? dump(atomslit::pattern_json(scan, spec, pipeline))
                                    : atomslit::pattern_csv(scan, spec, pipeline));
    } else if (*sweep_cmd) {
      const auto [spec, pipeline] = resolve(sweep_flags);
      const atomslit::BetaRange range = atomslit::BetaRange::parse(beta_range);
      const auto rows = atomslit::run_sweep(spec, pipeline, range, threads);
      write_output(sweep_out, sweep_out.format == "json" ? dump(atomslit::sweep_json(rows, spec, pipeline, range))
                                                         : atomslit::sweep_csv(rows, spec, pipeline, range));
    } else if (*ww_cmd) {
      const atomslit::WhichWayReport r = atomslit::run_whichway(ww_beta, ww_delta, ww_nmax);
      write_output(ww_out, ww_out.format == "json" ? dump(atomslit::whichway_json(r)) : atomslit::whichway_csv(r));
    } else if (*report_cmd) {
      const auto results = atomslit::run_acceptance(tol_scale);
      std::cerr << atomslit::acceptance_summary(results);
      OutputFlags o;
      o.out = report_out;
      write_output(o, dump(atomslit::acceptance_json(results, tol_scale)));
      return atomslit::all_passed(results) ? 0 : kExitAcceptance;
    }
  } catch (const atomslit::PhysicsDomainError& e) {
    std::cerr << "atomslit: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    std::cerr << "atomslit: " << e.what() << "\n";
    return kExitFlag;
  } catch (const std::exception& e) {
    std::cerr << "atomslit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
