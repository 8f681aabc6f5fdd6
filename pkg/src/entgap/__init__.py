"""Two-qubit entanglement measures and extremal-state searches."""

from .analytic import (
    Spectrum,
    max_gap_rank2,
    max_gap_rank3,
    max_gap_vs_C,
    me_concurrence,
    me_gap_envelope,
    me_negativity,
)
from .linalg import (
    HermEigResult,
    herm_eig,
    kron,
    partial_transpose,
    psd_sqrt,
    svd,
    swap_operator,
)
from .measures import (
    EntanglementReport,
    concurrence,
    eof_from_concurrence,
    negativity,
    participation_ratio,
    pure_negativity_spectrum,
    q_matrix,
    report,
)
from .optimize import (
    OptimizationResult,
    SimplexOptions,
    max_gap_fixed_C,
    max_gap_fixed_R,
    nelder_mead,
    orbit_maximize,
    state_from_params,
    unitary_from_params,
)
from .states import (
    DensityMatrix,
    Ensemble,
    InvalidStateError,
    PureState,
    Seed,
    StateFormatError,
    apply_local_unitary,
    ensemble_eigvec_condition,
    equality_class_state,
    random_fixed_spectrum,
    random_mixed,
    random_pure,
    read_state_file,
    reshape_to_matrix,
    schmidt,
    write_state_file,
)

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "Ensemble",
    "EntanglementReport",
    "HermEigResult",
    "InvalidStateError",
    "OptimizationResult",
    "PureState",
    "Seed",
    "SimplexOptions",
    "Spectrum",
    "StateFormatError",
    "apply_local_unitary",
    "concurrence",
    "ensemble_eigvec_condition",
    "eof_from_concurrence",
    "equality_class_state",
    "herm_eig",
    "kron",
    "max_gap_fixed_C",
    "max_gap_fixed_R",
    "max_gap_rank2",
    "max_gap_rank3",
    "max_gap_vs_C",
    "me_concurrence",
    "me_gap_envelope",
    "me_negativity",
    "negativity",
    "nelder_mead",
    "orbit_maximize",
    "partial_transpose",
    "participation_ratio",
    "psd_sqrt",
    "pure_negativity_spectrum",
    "q_matrix",
    "random_fixed_spectrum",
    "random_mixed",
    "random_pure",
    "read_state_file",
    "report",
    "reshape_to_matrix",
    "schmidt",
    "state_from_params",
    "svd",
    "swap_operator",
    "unitary_from_params",
    "write_state_file",
]
