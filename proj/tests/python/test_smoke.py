import math

import numpy as np
import pytest

import atomslit
from atomslit import oracle


def test_coherent_state_matches_series():
    amps, residual = atomslit.coherent_state(0.3, 16)
    n = np.arange(16)
    ref = np.exp(-0.045) * 0.3**n / np.sqrt([math.factorial(k) for k in n])
    assert np.allclose(amps, ref / np.linalg.norm(ref), atol=1e-14)
    assert 0 <= residual < 1e-15


def test_displacement_is_unitary():
    d = atomslit.displacement_operator(0.4 + 0.2j, 20)
    assert np.allclose(d.conj().T @ d, np.eye(20), atol=1e-10)


def test_independent_atoms():
    spec = atomslit.ScenarioSpec(config="B", beta=0.2)
    assert atomslit.build(spec).visibility() == pytest.approx(0.960789439152323, abs=1e-12)
    first = atomslit.ScenarioSpec(config="B", beta=0.2, treatment="first")
    assert atomslit.build(first).visibility() == pytest.approx(oracle.contrast_B(0.2), abs=1e-12)


def test_pattern_with_dispersive_element():
    spec = atomslit.ScenarioSpec(config="C1", pulse="long", beta=0.5)
    scan = atomslit.pattern(spec, samples=64)
    assert len(scan.phis) == 64
    assert scan.visibility == pytest.approx(0.5, abs=1e-12)
    assert atomslit.pattern(spec, dispersive=["SHIFTED"]).visibility == pytest.approx(1.0, abs=1e-12)


def test_eraser_and_coincidence():
    spec = atomslit.ScenarioSpec(config="B", beta=0.3, treatment="first")
    scan = atomslit.pattern(spec, eraser=True, coincidence="atom1_excited")
    assert scan.visibility == pytest.approx(1.0, abs=1e-12)
    assert scan.post_selection_probability == pytest.approx(0.045, abs=1e-12)
    erased = atomslit.apply_eraser(atomslit.build(spec))
    conditioned, prob = atomslit.condition(erased, "atom2_excited")
    assert conditioned.visibility() == pytest.approx(1.0, abs=1e-12)
    assert prob == pytest.approx(0.045, abs=1e-12)


def test_coupled_slits_quarter_beat():
    g = 1.0
    spec = atomslit.ScenarioSpec(config="E", beta=0.3, coupling_g=g, evolve_time=atomslit.quarter_beat_time(g))
    assert spec.treatment == atomslit.Treatment.FIRST_ORDER
    scan = atomslit.pattern(spec, coincidence="atom1_excited")
    assert scan.visibility == pytest.approx(1.0, abs=1e-12)
    assert atomslit.beat_frequency(g) == 2 * g


def test_sweep_and_whichway():
    rows = atomslit.sweep(atomslit.ScenarioSpec(config="B"), "0:0.3:4")
    assert [r["beta"] for r in rows] == pytest.approx([0.0, 0.1, 0.2, 0.3])
    assert all(r["deviation"] <= 5 * r["beta"] ** 4 + 1e-12 for r in rows)
    ww = atomslit.whichway(1.0, 1.0)
    assert ww["oracle"]["p_minus"] == pytest.approx(0.0183156388887342, rel=1e-12)
    assert oracle.whichway_probabilities(1.0, 1.0)["fractional_error"] == pytest.approx(math.exp(-4))


def test_errors():
    with pytest.raises(atomslit.TruncationError):
        atomslit.build(atomslit.ScenarioSpec(config="B", beta=3.0))
    with pytest.raises(atomslit.EmptyEnsembleError):
        atomslit.pattern(atomslit.ScenarioSpec(config="B"), coincidence="atom1_excited")
    with pytest.raises(ValueError):
        atomslit.ScenarioSpec(config="F")
    assert issubclass(atomslit.TruncationError, atomslit.PhysicsDomainError)


def test_spec_round_trip():
    spec = atomslit.ScenarioSpec(config="D", beta=0.1 - 0.2j, alpha=1.5, nmax=20)
    assert atomslit.ScenarioSpec.from_text(spec.to_text()) == spec


def test_acceptance_report():
    report = atomslit.acceptance()
    assert report["all_passed"] is True
    assert len(report["criteria"]) == 9
