"""gaborkit: frame diagnostics for time-frequency shift systems on Z_L.

The toolkit realizes the operator calculus of Gabor analysis on the cyclic
group Z_L: unitary time-frequency shifts, separable lattices with exact
adjoints, the analysis/synthesis/frame/Gramian operators, the twisted
convolution algebra with its shift-series representation, a fourteen-way
frame-equivalence consistency harness, canonical dual windows, and a
gallery of constructive counterexamples.
"""

from ._version import __version__
from .errors import (
    ConfigError,
    GaborkitError,
    LatticeError,
    MemoryGuardError,
    NonCommutativeLatticeError,
    NotAFrameError,
    PartitionOfUnityError,
    ShapeMismatchError,
    SingularAlgebraError,
)
from .lattice import (
    FiniteModel,
    PhasePoint,
    SeparableLattice,
    adjoint_lattice,
    compose_shifts,
    shift_matrix,
    shifts_commute,
    tf_shift,
)
from .operators import (
    LatticeCoefficients,
    Window,
    analysis_matrix,
    atom_stack,
    coefficient_map,
    frame_operator_apply,
    frame_operator_matrix,
    gramian_matrix,
    multiwindow_frame_operator,
    operator_norms,
    shift_autocorrelation,
    synthesis_map,
    synthesis_matrix,
)
from .twisted import (
    TwistedSequence,
    algebra_adjoint,
    index_commutative,
    janssen_coefficients,
    kernel_basis,
    left_multiplier_matrix,
    represent,
    right_multiplier_matrix,
    twisted_convolve,
    twisted_invert,
)
from .diagnostics import (
    BoundsReport,
    DualityRecord,
    EquivalenceVerdict,
    check_all_conditions,
    cross_gramian,
    cross_gramian_row_sum_gap,
    duality_check,
    frame_bounds,
    modulation_norm_proxy,
    reconstruction_residual,
    stft_grid,
    wexler_raz_dual,
    wexler_raz_residual,
)
from .gallery import (
    AlternatingProbeResult,
    WindowRecipe,
    gaussian_alternating_kernel_probe,
    make_window,
    partition_of_unity_deviation,
    partition_of_unity_kernel,
    periodized_gaussian,
    random_window,
)
from .reporting import (
    AnalysisConfig,
    DiagnosticsReport,
    divisor_pairs,
    load_window,
    run,
    save_window,
    sweep,
)
from .tolerances import DEFAULT_TOL_SCALE, margin_cutoff, rank_tolerance

__all__ = [name for name in dir() if not name.startswith("_")]
