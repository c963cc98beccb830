"""Exact solutions and verification tools for radially symmetric
pressureless gas flow with power-law jump data.

The solver builds global-in-time wave plans (delta fronts carrying lineal
mass, vacuum fans, contacts, origin accumulation); the companion modules
integrate general front ODEs, check conservation, dissipation, and weak
eps -> 0 limits, and cross-validate against a sticky-particle oracle.
"""
from .core import (
    Atom,
    CaseTag,
    ConfigError,
    ConservedPair,
    DegenerateDataError,
    DomainError,
    EpsFamily,
    FrontState,
    LinearFront,
    OutOfPhaseError,
    Phase,
    PlanRangeError,
    PreconditionError,
    PseudoRiemannData,
    RadialSWError,
    RegionProfile,
    SingularStartError,
    SingularTrajectoryError,
    SolutionSample,
    UnsupportedRegionError,
    WavePlan,
    surface_area,
)
from .exact_riemann import (
    ConstSpeedSW,
    PostAbsorptionConstants,
    PostAbsorptionSW,
    absorption_time,
    classify,
    evaluate,
    first_root_speed,
    origin_hit_time,
    origin_mass,
    post_absorption,
    second_root_speed,
    sigma_const,
    solve,
)
from .sw_ode import (
    FrontIVP,
    FrontTrajectory,
    front_rhs,
    integrate_front,
    nonentropic_derivatives,
    nonentropic_example,
    nonentropic_outer_states,
    ode_residual,
)
from .verify import (
    ResidualReport,
    TestFunction,
    conserved_pair,
    default_test_function,
    entropy_lhs,
    fit_order,
    is_overcompressive,
    rankine_hugoniot_degenerate,
    residual_ladder,
    second_root_excluded,
    total_mass,
    total_momentum,
    weak_residual,
)
from .oracle import (
    ParticleSystem,
    compare,
    discretize,
    front_extract,
    largest_absorption_time,
)

__version__ = "0.1.0"
