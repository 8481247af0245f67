"""Numerical weak KAM toolkit for Tonelli Hamiltonians on the circle.

Builds discrete Lax-Oleinik semigroups, estimates the critical value,
produces C^{1,1} critical sub-solutions by two-sided smoothing, locates
the Aubry set from sub-solution ensembles, and cross-checks everything
against the Hamiltonian flow.
"""

from .errors import (
    WeakKAMError,
    ConfigError,
    EvaluationDomainError,
    SuperlinearityRadiusError,
    VelocityWindowError,
    PreconditionError,
    ResolutionError,
    KTooSmallError,
    EnsembleError,
    IntegratorError,
    GraphBreakError,
    WeakKAMWarning,
    WindowWarning,
    RefinementWarning,
)
from .hamiltonian import (
    HamiltonianSpec,
    LegendreResult,
    TonelliReport,
    eval_h,
    vector_field,
    legendre,
    check_tonelli,
)
from .action import (
    ActionResult,
    periodic_displacement,
    periodic_distance,
    one_step_action,
    compose_action,
    minimizing_curve,
    euler_lagrange_residual,
)
from .laxoleinik import (
    GridFunction,
    SubSolutionReport,
    CriticalValueResult,
    forward_step,
    backward_step,
    evolve,
    subsolution_report,
    critical_value,
)
from .semiconcave import (
    RegularityProfile,
    QuadraticEnvelope,
    regularity_profile,
    superdifferential_interval,
    quadratic_envelope,
    c11_test,
)
from .regularize import (
    RegularizationResult,
    lasry_lions,
    small_s_search,
    density_sweep,
)
from .flow import (
    FlowState,
    Trajectory,
    TransportedGraph,
    GraphIdentityResult,
    integrate,
    graph_transport,
    graph_break_time,
    variational_consistency,
    graph_identity_check,
)
from .aubry import (
    AubryEstimate,
    ensemble_subsolution,
    aubry_points,
    equal_differential_check,
    calibration_residual,
    fixed_value_check,
)

__version__ = "0.1.0"

__all__ = [
    "WeakKAMError",
    "ConfigError",
    "EvaluationDomainError",
    "SuperlinearityRadiusError",
    "VelocityWindowError",
    "PreconditionError",
    "ResolutionError",
    "KTooSmallError",
    "EnsembleError",
    "IntegratorError",
    "GraphBreakError",
    "WeakKAMWarning",
    "WindowWarning",
    "RefinementWarning",
    "HamiltonianSpec",
    "LegendreResult",
    "TonelliReport",
    "eval_h",
    "vector_field",
    "legendre",
    "check_tonelli",
    "ActionResult",
    "periodic_displacement",
    "periodic_distance",
    "one_step_action",
    "compose_action",
    "minimizing_curve",
    "euler_lagrange_residual",
    "GridFunction",
    "SubSolutionReport",
    "CriticalValueResult",
    "forward_step",
    "backward_step",
    "evolve",
    "subsolution_report",
    "critical_value",
    "RegularityProfile",
    "QuadraticEnvelope",
    "regularity_profile",
    "superdifferential_interval",
    "quadratic_envelope",
    "c11_test",
    "RegularizationResult",
    "lasry_lions",
    "small_s_search",
    "density_sweep",
    "FlowState",
    "Trajectory",
    "TransportedGraph",
    "GraphIdentityResult",
    "integrate",
    "graph_transport",
    "graph_break_time",
    "variational_consistency",
    "graph_identity_check",
    "AubryEstimate",
    "ensemble_subsolution",
    "aubry_points",
    "equal_differential_check",
    "calibration_residual",
    "fixed_value_check",
    "__version__",
]
