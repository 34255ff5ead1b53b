"""Delayed host-vector epidemic model with standard incidence.

Four compartments (susceptible/infectious hosts, susceptible/infectious
vectors), a fixed incubation delay in the host infection term, and the
vector-population fraction in the transmission rate. The package computes
equilibria and the reproduction number, integrates the delay system by the
method of steps, classifies equilibria through the characteristic equation,
evaluates Lyapunov functionals along trajectories, and checks weak
persistence of the infected host class.
"""

from .defaults import (
    CLAMP_BAND,
    DEFAULT_THETA,
    RECORD_STRIDE,
    STEPS_PER_DELAY,
    TAIL_WINDOW,
    default_ode_step,
    default_t_end,
)
from .equilibria import (
    EquilibriumSet,
    basic_reproduction_number,
    disease_free_equilibrium,
    endemic_equilibrium,
    equilibrium_residual,
    equilibrium_set,
    r0_squared,
)
from .errors import (
    EmptyWindowError,
    EndemicAbsentError,
    InvalidHistoryError,
    ModelError,
    NegativeDelayError,
    NegativityBreachError,
    NoBracketError,
    NonPositiveArgumentError,
    NonPositiveProductError,
    NonPositiveRateError,
    NotInDomainDError,
    NumericalError,
    OutOfRangeError,
    OutsideOmega1Error,
    OutsideOmega2Error,
    SchemaError,
    SubcriticalR0Error,
    SupercriticalR0Error,
    ThetaOutOfRangeError,
    ValidationError,
    ZeroMosquitoPopulationError,
)
from .integrator import (
    IntegrationSpec,
    SystemKind,
    TailStats,
    Trajectory,
    convergence_order,
    dense_eval,
    integrate,
    tail_stats,
)
from .lyapunov import (
    FunctionalKind,
    LyapunovTrace,
    descend_check,
    f_bridge,
    trace_along,
    v_dfe,
    v_endemic,
)
from .model import (
    COMPONENT_NAMES,
    DomainFlag,
    HistorySegment,
    ModelParams,
    State,
    rhs_full,
    rhs_limiting,
    validate_params,
)
from .persistence import (
    PersistenceBounds,
    PersistenceReport,
    persistence_bounds,
    weak_persistence_check,
)
from .scenario import (
    Scenario,
    SweepSpec,
    load_scenario,
    load_sweep,
    run_scenario,
    run_sweep,
)
from .stability import (
    CharCoeffs,
    Classification,
    DfeCharCoeffs,
    EndemicCharCoeffs,
    EquilibriumKind,
    StabilityReport,
    char_eval,
    classify,
    full_char_eval,
    imaginary_axis_root_exists,
    rightmost_real_root,
    routh_hurwitz_tau0,
)

__version__ = "0.1.0"

__all__ = [
    "COMPONENT_NAMES",
    "CLAMP_BAND",
    "CharCoeffs",
    "Classification",
    "DEFAULT_THETA",
    "DfeCharCoeffs",
    "DomainFlag",
    "EmptyWindowError",
    "EndemicAbsentError",
    "EndemicCharCoeffs",
    "EquilibriumKind",
    "EquilibriumSet",
    "FunctionalKind",
    "HistorySegment",
    "IntegrationSpec",
    "InvalidHistoryError",
    "LyapunovTrace",
    "ModelError",
    "ModelParams",
    "NegativeDelayError",
    "NegativityBreachError",
    "NoBracketError",
    "NonPositiveArgumentError",
    "NonPositiveProductError",
    "NonPositiveRateError",
    "NotInDomainDError",
    "NumericalError",
    "OutOfRangeError",
    "OutsideOmega1Error",
    "OutsideOmega2Error",
    "PersistenceBounds",
    "PersistenceReport",
    "RECORD_STRIDE",
    "STEPS_PER_DELAY",
    "Scenario",
    "SchemaError",
    "State",
    "StabilityReport",
    "SubcriticalR0Error",
    "SupercriticalR0Error",
    "SweepSpec",
    "SystemKind",
    "TAIL_WINDOW",
    "TailStats",
    "ThetaOutOfRangeError",
    "Trajectory",
    "ValidationError",
    "ZeroMosquitoPopulationError",
    "basic_reproduction_number",
    "char_eval",
    "classify",
    "convergence_order",
    "default_ode_step",
    "default_t_end",
    "dense_eval",
    "descend_check",
    "disease_free_equilibrium",
    "endemic_equilibrium",
    "equilibrium_residual",
    "equilibrium_set",
    "f_bridge",
    "full_char_eval",
    "imaginary_axis_root_exists",
    "integrate",
    "load_scenario",
    "load_sweep",
    "persistence_bounds",
    "r0_squared",
    "rhs_full",
    "rhs_limiting",
    "rightmost_real_root",
    "routh_hurwitz_tau0",
    "run_scenario",
    "run_sweep",
    "tail_stats",
    "trace_along",
    "v_dfe",
    "v_endemic",
    "validate_params",
    "weak_persistence_check",
]
