"""Vector-host transmission model with a latency delay.

State (S_h, I_h, S_v, I_v): susceptible/infectious humans and mosquitoes.
Humans are recruited at rate beta_h and die at rate mu_h; mosquitoes at
beta_v, mu_v. Bites transmit with standard (frequency-dependent) incidence
on the mosquito side, and new human infections at time t trace back to
contacts made one latency period tau earlier:

    S_h' = beta_h - C_vh * (I_v(t)/N_v(t)) * S_h(t) - mu_h * S_h(t)
    I_h' = C_vh * (I_v(t-tau)/N_v(t-tau)) * S_h(t-tau) - mu_h * I_h(t)
    S_v' = beta_v - C_hv * I_h(t) * S_v(t) - mu_v * S_v(t)
    I_v' = C_hv * I_h(t) * S_v(t) - mu_v * I_v(t)

with N_v = S_v + I_v. The total mosquito population obeys
N_v' = beta_v - mu_v * N_v on its own and settles at S_v0 = beta_v / mu_v,
which motivates the "limiting" variant where the incidence denominator is
frozen at S_v0. Long-run analysis (Lyapunov certificates) is done on the
limiting system; simulation defaults to the full one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    InvalidHistoryError,
    NegativeDelayError,
    NonPositiveRateError,
    OutOfRangeError,
    ZeroMosquitoPopulationError,
)

Deriv = tuple[float, float, float, float]

_RATE_FIELDS = ("beta_h", "beta_v", "mu_h", "mu_v", "c_vh", "c_hv")


@dataclass(frozen=True)
class ModelParams:
    """Rates are per unit time; c_vh / c_hv are the two transmission rates.

    Construction does not validate (so degenerate configurations can be
    probed deliberately); call validate_params before trusting an instance.
    """

    beta_h: float
    beta_v: float
    mu_h: float
    mu_v: float
    c_vh: float
    c_hv: float
    tau: float

    @property
    def s_h0(self) -> float:
        """Disease-free human population beta_h / mu_h."""
        return self.beta_h / self.mu_h

    @property
    def s_v0(self) -> float:
        """Disease-free (and limiting) mosquito population beta_v / mu_v."""
        return self.beta_v / self.mu_v

    @property
    def max_rate(self) -> float:
        return max(self.beta_h, self.beta_v, self.mu_h, self.mu_v,
                   self.c_vh, self.c_hv)


def validate_params(p: ModelParams) -> ModelParams:
    """Check positivity of the six rates and tau >= 0; return p unchanged."""
    for name in _RATE_FIELDS:
        v = getattr(p, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise NonPositiveRateError(name, v)
    if not (isinstance(p.tau, (int, float)) and math.isfinite(p.tau) and p.tau >= 0):
        raise NegativeDelayError(p.tau)
    return p


@dataclass(frozen=True)
class State:
    """Compartment sizes at one instant. Derivatives reuse the same 4-tuple
    shape as plain tuples, since they may be negative."""

    s_h: float
    i_h: float
    s_v: float
    i_v: float

    @property
    def n_v(self) -> float:
        return self.s_v + self.i_v

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s_h, self.i_h, self.s_v, self.i_v)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @classmethod
    def from_sequence(cls, seq: Iterable[float]) -> "State":
        a, b, c, d = (float(x) for x in seq)
        return cls(a, b, c, d)


COMPONENT_NAMES = ("s_h", "i_h", "s_v", "i_v")


def _make_rhs(p: ModelParams, limiting: bool) -> Callable[..., Deriv]:
    """Scalar right-hand side closure shared by the public ops and the stepper.

    Signature: rhs(sh, ih, sv, iv, shd, ihd, svd, ivd) where the d-suffixed
    arguments are the delayed state. The mosquito infection flux is computed
    once per state so that d/dt(S_v + I_v) cancels it exactly in floating
    point.
    """
    beta_h, beta_v = p.beta_h, p.beta_v
    mu_h, mu_v = p.mu_h, p.mu_v
    c_vh, c_hv = p.c_vh, p.c_hv

    if limiting:
        inv_nv = 1.0 / p.s_v0

        def rhs(sh, ih, sv, iv, shd, ihd, svd, ivd):
            flux_v = c_hv * ih * sv
            return (
                beta_h - c_vh * (iv * inv_nv) * sh - mu_h * sh,
                c_vh * (ivd * inv_nv) * shd - mu_h * ih,
                beta_v - flux_v - mu_v * sv,
                flux_v - mu_v * iv,
            )
    else:

        def rhs(sh, ih, sv, iv, shd, ihd, svd, ivd):
            flux_v = c_hv * ih * sv
            return (
                beta_h - c_vh * (iv / (sv + iv)) * sh - mu_h * sh,
                c_vh * (ivd / (svd + ivd)) * shd - mu_h * ih,
                beta_v - flux_v - mu_v * sv,
                flux_v - mu_v * iv,
            )

    return rhs


def rhs_full(p: ModelParams, now: State, delayed: State) -> Deriv:
    """Time derivative of the full system at (now, delayed).

    Raises ZeroMosquitoPopulationError if either state has N_v <= 0, since
    standard incidence divides by it.
    """
    if now.n_v <= 0 or delayed.n_v <= 0:
        raise ZeroMosquitoPopulationError()
    f = _make_rhs(p, limiting=False)
    return f(*now.as_tuple(), *delayed.as_tuple())


def rhs_limiting(p: ModelParams, now: State, delayed: State) -> Deriv:
    """Time derivative of the limiting system (denominator frozen at S_v0)."""
    f = _make_rhs(p, limiting=True)
    return f(*now.as_tuple(), *delayed.as_tuple())


class HistorySegment:
    """Initial data on [-tau, 0]: either a constant state or a sampled table
    interpolated piecewise-linearly.

    Invariants, enforced at construction: sample times strictly increasing
    from -tau to 0, every sample componentwise >= 0, and S_v + I_v > 0 at
    every sample.
    """

    __slots__ = ("times", "states", "tau")

    def __init__(self, times: np.ndarray, states: np.ndarray, tau: float):
        self.times = times
        self.states = states
        self.tau = tau
        self._validate()

    @classmethod
    def constant(cls, state: State | Sequence[float], tau: float) -> "HistorySegment":
        if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau >= 0):
            raise NegativeDelayError(tau)
        row = state.as_tuple() if isinstance(state, State) else tuple(float(x) for x in state)
        if tau == 0:
            times = np.array([0.0])
            states = np.array([row], dtype=float)
        else:
            times = np.array([-float(tau), 0.0])
            states = np.array([row, row], dtype=float)
        return cls(times, states, float(tau))

    @classmethod
    def table(cls, times: Sequence[float], states: Sequence[Sequence[float]]) -> "HistorySegment":
        t = np.asarray(times, dtype=float)
        x = np.asarray(states, dtype=float)
        if t.ndim != 1 or x.shape != (t.size, 4):
            raise InvalidHistoryError("table needs times (n,) and states (n, 4)")
        if t.size < 1 or t[-1] != 0.0:
            raise InvalidHistoryError("last sample time must be exactly 0")
        return cls(t, x, -float(t[0]))

    def _validate(self) -> None:
        if np.any(np.diff(self.times) <= 0):
            raise InvalidHistoryError("sample times must be strictly increasing")
        if abs(self.times[0] + self.tau) > 1e-9 * (1.0 + self.tau):
            raise InvalidHistoryError("first sample time must equal -tau")
        if np.any(self.states < 0):
            raise InvalidHistoryError("history samples must be componentwise >= 0")
        if np.any(self.states[:, 2] + self.states[:, 3] <= 0):
            raise InvalidHistoryError("S_v + I_v must stay strictly positive "
                                      "on the history interval")

    def value_at(self, theta: float) -> tuple[float, float, float, float]:
        """Piecewise-linear evaluation at offset theta in [-tau, 0]."""
        if theta < self.times[0] - 1e-12 or theta > 1e-12:
            raise OutOfRangeError(theta, -self.tau, 0.0)
        if self.times.size == 1:
            row = self.states[0]
            return (row[0], row[1], row[2], row[3])
        return tuple(np.interp(theta, self.times, self.states[:, k]) for k in range(4))

    def state_at(self, theta: float) -> State:
        return State(*self.value_at(theta))


class DomainFlag(enum.Enum):
    """Nested admissible sets for initial data: OMEGA2 <= D <= C_PLUS.

    C_PLUS: componentwise nonnegative with S_v + I_v > 0 pointwise (this is
    exactly the HistorySegment invariant). D adds I_h(0) > 0, the seed needed
    for persistence. OMEGA2 adds strict positivity of all of phi(0).
    """

    C_PLUS = "c_plus"
    D = "d"
    OMEGA2 = "omega2"

    def contains(self, phi: HistorySegment) -> bool:
        ok = bool(np.all(phi.states >= 0)
                  and np.all(phi.states[:, 2] + phi.states[:, 3] > 0))
        if self is DomainFlag.C_PLUS:
            return ok
        end = phi.states[-1]
        if self is DomainFlag.D:
            return ok and end[1] > 0
        return ok and bool(np.all(end > 0))
