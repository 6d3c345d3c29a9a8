"""Spectral scans of quantum many-body models from real-time evolution data."""

from .budget import (
    BudgetError,
    ErrorBudget,
    SweepResult,
    SweepRow,
    cutoff_error_bound,
    cutoff_error_bound_tight,
    cutoff_sweep,
    make_budget,
    min_sampling_range,
    shot_variance_bound,
)
from .pauli import (
    DENSE_LIMIT,
    Hamiltonian,
    Observable,
    PauliError,
    PauliString,
    commutator_norm,
    commutes,
    heisenberg_chain,
    load_hamiltonian,
    product,
    save_hamiltonian,
)
from .peaks import (
    DEFAULT_PROMINENCE,
    AccuracyBound,
    MatchTable,
    Peak,
    PeakError,
    PeakReport,
    find_peaks,
    gap_peak_shift_estimate,
    ground_peak_shift_bound,
    match_peaks,
)
from .scan import (
    AliasingError,
    CoolingFunction,
    EvolutionSpec,
    ScanConfig,
    ScanError,
    SpectralScan,
    TimeSample,
    assemble_scan,
    assemble_scan_deterministic,
    degeneracy_probe,
    energy_grid,
    energy_kernel,
    gap_kernel,
    run_scan,
    sample_times,
    scan_2d,
    transition_kernel,
)
from .states import (
    NumericError,
    SampleStream,
    Spectrum,
    StateError,
    eigendecompose,
    evolve_exact,
    evolve_trotter,
    expectation,
    inner,
    prepare_state,
    sample_expectation,
)

__all__ = [
    "AccuracyBound",
    "AliasingError",
    "BudgetError",
    "CoolingFunction",
    "DEFAULT_PROMINENCE",
    "DENSE_LIMIT",
    "ErrorBudget",
    "EvolutionSpec",
    "Hamiltonian",
    "MatchTable",
    "NumericError",
    "Observable",
    "PauliError",
    "PauliString",
    "Peak",
    "PeakError",
    "PeakReport",
    "SampleStream",
    "ScanConfig",
    "ScanError",
    "SpectralScan",
    "Spectrum",
    "StateError",
    "SweepResult",
    "SweepRow",
    "TimeSample",
    "assemble_scan",
    "assemble_scan_deterministic",
    "commutator_norm",
    "commutes",
    "cutoff_error_bound",
    "cutoff_error_bound_tight",
    "cutoff_sweep",
    "degeneracy_probe",
    "eigendecompose",
    "energy_grid",
    "energy_kernel",
    "evolve_exact",
    "evolve_trotter",
    "expectation",
    "find_peaks",
    "gap_kernel",
    "gap_peak_shift_estimate",
    "ground_peak_shift_bound",
    "heisenberg_chain",
    "inner",
    "load_hamiltonian",
    "make_budget",
    "match_peaks",
    "min_sampling_range",
    "prepare_state",
    "product",
    "run_scan",
    "sample_expectation",
    "sample_times",
    "save_hamiltonian",
    "scan_2d",
    "shot_variance_bound",
    "transition_kernel",
]

__version__ = "0.1.0"
