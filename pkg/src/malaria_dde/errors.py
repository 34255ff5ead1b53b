"""Exception taxonomy.

Two families matter to batch callers: ValidationError (bad inputs, bad
domains, bad schemas; CLI exit code 1) and NumericalError (the computation
itself broke down; CLI exit code 2).
"""

from __future__ import annotations


class ModelError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ModelError):
    """Input, domain, or schema violation detected before/while computing."""


class NumericalError(ModelError):
    """A numerical procedure failed (overshoot, lost bracket, division blowup)."""


class NonPositiveRateError(ValidationError):
    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"rate {name} must be strictly positive, got {value!r}")


class NegativeDelayError(ValidationError):
    def __init__(self, value: float):
        self.value = value
        super().__init__(f"delay tau must be >= 0, got {value!r}")


class InvalidHistoryError(ValidationError):
    """History segment violates its invariants (ordering, sign, mosquito total)."""


class ZeroMosquitoPopulationError(NumericalError):
    def __init__(self, t: float | None = None):
        self.t = t
        where = "" if t is None else f" at t = {t:g}"
        super().__init__(f"total mosquito population reached zero{where}; "
                         "standard incidence is undefined")


class NegativityBreachError(NumericalError):
    def __init__(self, t: float, component: str, value: float):
        self.t = t
        self.component = component
        self.value = value
        super().__init__(f"component {component} = {value:.3e} fell below -1e-9 "
                         f"at t = {t:g}; step size too coarse for this problem")


class OutOfRangeError(ValidationError):
    def __init__(self, t: float, lo: float, hi: float):
        self.t = t
        super().__init__(f"t = {t:g} outside the computed range [{lo:g}, {hi:g}]")


class EmptyWindowError(ValidationError):
    def __init__(self, msg: str = "tail window contains fewer than two mesh nodes"):
        super().__init__(msg)


class NoBracketError(NumericalError):
    def __init__(self, search_max: float):
        self.search_max = search_max
        super().__init__(f"no sign change bracketing a real root within "
                         f"[0, {search_max:g}]")


class EndemicAbsentError(ValidationError):
    def __init__(self):
        super().__init__("endemic equilibrium does not exist (R0 <= 1)")


class NonPositiveArgumentError(ValidationError):
    def __init__(self, x: float):
        self.x = x
        super().__init__(f"argument must be strictly positive, got {x!r}")


class OutsideOmega1Error(ValidationError):
    def __init__(self):
        super().__init__("window not admissible: needs S_h(0) > 0 and S_v(0) > 0")


class OutsideOmega2Error(ValidationError):
    def __init__(self):
        super().__init__("window not admissible: needs every component of the "
                         "current state strictly positive")


class NonPositiveProductError(ValidationError):
    def __init__(self, theta: float):
        self.theta = theta
        super().__init__(f"I_v * S_h must stay strictly positive on the window; "
                         f"violated at offset {theta:g}")


class SubcriticalR0Error(ValidationError):
    def __init__(self, r0: float):
        self.r0 = r0
        super().__init__(f"operation requires R0 > 1, got R0 = {r0:.6g}")


class SupercriticalR0Error(ValidationError):
    def __init__(self, r0: float):
        self.r0 = r0
        super().__init__(f"operation requires R0 <= 1, got R0 = {r0:.6g}")


class ThetaOutOfRangeError(ValidationError):
    def __init__(self, theta: float):
        self.theta = theta
        super().__init__(f"theta must lie strictly inside (0, 1), got {theta!r}")


class NotInDomainDError(ValidationError):
    def __init__(self):
        super().__init__("history not in the persistence domain: needs I_h(0) > 0")


class SchemaError(ValidationError):
    def __init__(self, field: str, msg: str):
        self.field = field
        super().__init__(f"{field}: {msg}")
