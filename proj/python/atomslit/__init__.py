"""Young's double slit with trapped-atom slits: fringe visibility and which-way information."""

from ._core import (
    PROJECTORS,
    Config,
    EmptyEnsembleError,
    FreqTag,
    PatternScan,
    PhysicsDomainError,
    Pulse,
    ScenarioSpec,
    Treatment,
    TruncationError,
    TwoPathComponent,
    TwoPathMixture,
    __version__,
    acceptance,
    apply_dispersive,
    apply_eraser,
    apply_eraser_inverse,
    beat_frequency,
    build,
    coherent_state,
    condition,
    displacement_operator,
    evolve_beat,
    oracle,
    pattern,
    quarter_beat_time,
    safe_truncation,
    sweep,
    whichway,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
