"""Energy-style certificates for the two global regimes.

Both functionals act on a sliding window psi of the solution over [t - tau, t]
and are built from the bridge x - 1 - ln x (nonnegative, zero only at 1):

* v_dfe anchors at the disease-free state; it is nonincreasing along the
  LIMITING system whenever R0 <= 1.
* v_endemic anchors at the endemic state (requires R0 > 1); nonincreasing
  along the limiting system on windows with strictly positive current state
  and I_v * S_h > 0 throughout.

Window integrals use the composite trapezoid rule on the window's own sample
times, which for trajectory windows are the integration mesh nodes.
descend_check integrates the limiting system and evaluates the requested
functional at every node t >= tau; a max consecutive increase at rounding
scale certifies monotone descent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import defaults
from .equilibria import basic_reproduction_number, endemic_equilibrium, r0_squared
from .errors import (
    NonPositiveArgumentError,
    NonPositiveProductError,
    OutsideOmega1Error,
    OutsideOmega2Error,
    SubcriticalR0Error,
    SupercriticalR0Error,
)
from .integrator import IntegrationSpec, SystemKind, Trajectory, integrate
from .model import HistorySegment, ModelParams

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


class FunctionalKind(enum.Enum):
    V_DFE = "v_dfe"
    V_ENDEMIC = "v_endemic"


def f_bridge(x: float) -> float:
    """1 - x + ln x for x > 0: nonpositive, and zero only at x = 1."""
    if not (x > 0):
        raise NonPositiveArgumentError(x)
    return 1.0 - x + math.log(x)


def v_dfe(p: ModelParams, psi: HistorySegment) -> float:
    """Disease-free functional on a window. Needs S_h(0) > 0 and S_v(0) > 0."""
    end = psi.states[-1]
    if not (end[0] > 0 and end[2] > 0):
        raise OutsideOmega1Error()
    sh0, sv0 = p.s_h0, p.s_v0
    coef = p.mu_v * p.mu_h / (p.c_hv * p.beta_v)
    point = (sh0 * (end[0] / sh0 - 1.0 - math.log(end[0] / sh0))
             + end[1]
             + coef * sv0 * (end[2] / sv0 - 1.0 - math.log(end[2] / sv0))
             + coef * end[3])
    integrand = (p.mu_v / p.beta_v) * p.c_vh * psi.states[:, 3] * psi.states[:, 0]
    return float(point + _trapezoid(integrand, psi.times))


def v_endemic(p: ModelParams, psi: HistorySegment) -> float:
    """Endemic functional on a window. Needs R0 > 1, psi(0) strictly positive
    componentwise, and I_v * S_h > 0 at every window sample."""
    star = endemic_equilibrium(p)
    if star is None:
        raise SubcriticalR0Error(basic_reproduction_number(p))
    end = psi.states[-1]
    if not np.all(end > 0):
        raise OutsideOmega2Error()
    prod = psi.states[:, 3] * psi.states[:, 0]
    bad = np.nonzero(prod <= 0)[0]
    if bad.size:
        raise NonPositiveProductError(float(psi.times[bad[0]]))

    weight = p.mu_h * star.i_h / (p.mu_v * star.i_v)
    point = ((end[0] - star.s_h - star.s_h * math.log(end[0] / star.s_h))
             + (end[1] - star.i_h - star.i_h * math.log(end[1] / star.i_h))
             + weight * (end[2] - star.s_v - star.s_v * math.log(end[2] / star.s_v))
             + weight * (end[3] - star.i_v - star.i_v * math.log(end[3] / star.i_v)))
    x = p.mu_v * p.c_vh * prod / (p.beta_v * p.mu_h * star.i_h)
    integrand = x - 1.0 - np.log(x)
    return float(point + p.mu_h * star.i_h * _trapezoid(integrand, psi.times))


@dataclass(frozen=True)
class LyapunovTrace:
    """Functional values at every recorded node t >= tau."""

    kind: FunctionalKind
    times: np.ndarray
    values: np.ndarray
    max_increase: float

    def passes_descent(self, scale: float = defaults.DESCENT_SLACK_SCALE) -> bool:
        """Monotone within slack scale * (1 + |V at the first node|)."""
        return self.max_increase <= scale * (1.0 + abs(float(self.values[0])))

    def to_csv(self, target: str | IO[str]) -> None:
        close = False
        if isinstance(target, str):
            fh = open(target, "w")
            close = True
        else:
            fh = target
        try:
            fh.write("t,V\n")
            for t, v in zip(self.times, self.values):
                fh.write(f"{t:.17g},{v:.17g}\n")
        finally:
            if close:
                fh.close()


def _window_integrals(integrand: np.ndarray, times: np.ndarray, m: int) -> np.ndarray:
    """Trapezoid integral over [t_k - tau, t_k] for every node k >= m."""
    if m == 0:
        return np.zeros(times.size)
    panels = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(times)
    cum = np.concatenate([[0.0], np.cumsum(panels)])
    return cum[m:] - cum[:cum.size - m]


def descend_check(p: ModelParams, phi: HistorySegment, kind: FunctionalKind,
                  t_end: float,
                  steps_per_delay: int = defaults.STEPS_PER_DELAY) -> LyapunovTrace:
    """Integrate the limiting system from phi and trace the functional.

    Regime gate: V_DFE needs R0 <= 1 (it is also meaningful at exactly 1),
    V_ENDEMIC needs R0 > 1.
    """
    r2 = r0_squared(p)
    if kind is FunctionalKind.V_DFE and r2 > 1.0:
        raise SupercriticalR0Error(math.sqrt(r2))
    if kind is FunctionalKind.V_ENDEMIC and r2 <= 1.0:
        raise SubcriticalR0Error(math.sqrt(r2))

    spec = IntegrationSpec(system=SystemKind.LIMITING, t_end=t_end,
                           steps_per_delay=steps_per_delay, record_stride=1)
    traj = integrate(p, phi, spec)
    return trace_along(p, traj, kind)


def trace_along(p: ModelParams, traj: Trajectory, kind: FunctionalKind) -> LyapunovTrace:
    """Functional values along an existing stride-1 limiting trajectory."""
    times, states = traj.times, traj.states
    m = 0 if traj.tau == 0 else int(round(traj.tau / traj.h))
    if times.size - m < 2:
        raise ValueError("horizon too short: need at least two nodes past tau")
    x1, x2, x3, x4 = (states[m:, k] for k in range(4))

    if kind is FunctionalKind.V_DFE:
        if not (np.all(x1 > 0) and np.all(x3 > 0)):
            raise OutsideOmega1Error()
        sh0, sv0 = p.s_h0, p.s_v0
        coef = p.mu_v * p.mu_h / (p.c_hv * p.beta_v)
        point = (sh0 * (x1 / sh0 - 1.0 - np.log(x1 / sh0)) + x2
                 + coef * sv0 * (x3 / sv0 - 1.0 - np.log(x3 / sv0)) + coef * x4)
        integrand = (p.mu_v / p.beta_v) * p.c_vh * states[:, 3] * states[:, 0]
        values = point + _window_integrals(integrand, times, m)
    else:
        star = endemic_equilibrium(p)
        if star is None:
            raise SubcriticalR0Error(basic_reproduction_number(p))
        if not np.all(states[m:] > 0):
            raise OutsideOmega2Error()
        prod = states[:, 3] * states[:, 0]
        bad = np.nonzero(prod <= 0)[0]
        if bad.size:
            raise NonPositiveProductError(float(times[bad[0]]))
        weight = p.mu_h * star.i_h / (p.mu_v * star.i_v)
        point = ((x1 - star.s_h - star.s_h * np.log(x1 / star.s_h))
                 + (x2 - star.i_h - star.i_h * np.log(x2 / star.i_h))
                 + weight * (x3 - star.s_v - star.s_v * np.log(x3 / star.s_v))
                 + weight * (x4 - star.i_v - star.i_v * np.log(x4 / star.i_v)))
        xarg = p.mu_v * p.c_vh * prod / (p.beta_v * p.mu_h * star.i_h)
        integrand = xarg - 1.0 - np.log(xarg)
        values = point + p.mu_h * star.i_h * _window_integrals(integrand, times, m)

    increase = float(np.max(np.diff(values))) if values.size >= 2 else 0.0
    return LyapunovTrace(kind=kind, times=times[m:], values=values,
                         max_increase=increase)
