"""
Pseudospectral split-step solver for the defocusing nonlinear Schrodinger
equation on a truncated periodic box, with a frequency-filtered Lie-Trotter
scheme, a fine Strang reference oracle, vectorfield/scattering diagnostics,
and study drivers that measure convergence order, uniformity in time,
dispersive decay, and scattering behavior.
"""

from .errors import (
    BoundaryLeakError,
    ChirpUnderresolvedError,
    ConfigParseError,
    ConstraintError,
    DegenerateDenominatorError,
    NlsplitError,
    NonFiniteError,
    UnknownKindError,
)
from .experiments import (
    ConvergenceRow,
    ConvergenceStudy,
    DecayStudy,
    InvariantResult,
    ScatteringStudy,
    SigmaVerdict,
    StudyConfig,
    TrajectoryRecord,
    UniformityStudy,
    back_propagated,
    default_boundary_threshold,
    make_datum,
    run_convergence_study,
    run_decay_study,
    run_invariant_suite,
    run_scattering_study,
    run_uniformity_study,
    sigma_constraint_check,
    strichartz_report,
    trajectory_diagnostics,
)
from .flows import (
    SchemeParams,
    Trajectory,
    discrete_duhamel_reconstruct,
    evolve,
    filtered_linear_flow,
    lie_trotter_step,
    linear_flow,
    nonlinear_flow,
    strang_reference,
)
from .norms import (
    AdmissiblePair,
    StrichartzAccumulator,
    admissible_check,
    canonical_pair,
    delta_of_r,
    energy,
    gamma_exponent,
    lp_norm,
    mass,
    sigma_norm,
)
from .spectral_core import (
    CutoffProfile,
    Field,
    GridSpec,
    apply_cutoff,
    apply_multiplier,
    chi_eval,
    chi_grad_eval,
    cutoff_symbol,
    forward_transform,
    gradient,
    inverse_transform,
)
from .vectorfield import (
    PseudoConformalRecord,
    galilean_cutoff_commutator,
    galilean_direct,
    galilean_factored,
    galilean_norm,
    gagliardo_nirenberg_ratio,
    pseudoconformal_quantity,
)

__version__ = "0.1.0"
