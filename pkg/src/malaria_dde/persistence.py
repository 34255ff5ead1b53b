"""Weak persistence of the infection above the endemic level.

For R0 > 1 and a persistence fraction theta in (0, 1), the susceptible pools
along any solution seeded with I_h(0) > 0 are eventually bounded below by

    s_v_bar = beta_v / (theta * C_hv * I_h* + mu_v)      ( > S_v* )
    s_h_bar = beta_h / (C_vh * (1 - s_v_bar / S_v0) + mu_h)   ( > S_h* )

and the infectious pools cannot settle below theta times their endemic
levels. Both bounds meet the endemic state exactly at theta = 1, which is
why theta stays strictly inside (0, 1). weak_persistence_check certifies the
sup-form conditions on a finite run by proxying limsup/liminf with tail
window extrema.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import defaults
from .equilibria import basic_reproduction_number, endemic_equilibrium, r0_squared
from .errors import NotInDomainDError, SubcriticalR0Error, ThetaOutOfRangeError
from .integrator import IntegrationSpec, SystemKind, TailStats, integrate, tail_stats
from .model import DomainFlag, HistorySegment, ModelParams, State


@dataclass(frozen=True)
class PersistenceBounds:
    theta: float
    s_v_bar: float
    s_h_bar: float


def _require_supercritical(p: ModelParams) -> State:
    star = endemic_equilibrium(p)
    if star is None:
        raise SubcriticalR0Error(basic_reproduction_number(p))
    return star


def _require_theta(theta: float) -> float:
    if not (0.0 < theta < 1.0):
        raise ThetaOutOfRangeError(theta)
    return theta


def persistence_bounds(p: ModelParams, theta: float) -> PersistenceBounds:
    """Closed-form eventual lower bounds on the susceptible pools."""
    _require_theta(theta)
    star = _require_supercritical(p)
    s_v_bar = p.beta_v / (theta * p.c_hv * star.i_h + p.mu_v)
    s_h_bar = p.beta_h / (p.c_vh * (1.0 - s_v_bar / p.s_v0) + p.mu_h)
    # guaranteed by theta < 1; a failure here would mean broken closed forms
    assert s_v_bar > star.s_v and s_h_bar > star.s_h
    return PersistenceBounds(theta=theta, s_v_bar=s_v_bar, s_h_bar=s_h_bar)


@dataclass(frozen=True)
class PersistenceReport:
    theta: float
    threshold: float
    i_h_tail_sup: float
    tail: TailStats
    passes: bool

    def as_lines(self, prefix: str = "persistence") -> list[str]:
        key = f"{prefix}.theta_{self.theta:g}"
        lines = [
            f"{key}.threshold = {self.threshold:.17g}",
            f"{key}.i_h_tail_sup = {self.i_h_tail_sup:.17g}",
        ]
        for name in ("s_h", "i_h", "s_v", "i_v"):
            lines.append(f"{key}.tail_inf.{name} = "
                         f"{getattr(self.tail.inf, name):.17g}")
            lines.append(f"{key}.tail_sup.{name} = "
                         f"{getattr(self.tail.sup, name):.17g}")
        lines.append(f"{key}.passes = {str(self.passes).lower()}")
        return lines


def weak_persistence_check(p: ModelParams, phi: HistorySegment, theta: float,
                           t_end: float | None = None,
                           window: float = defaults.TAIL_WINDOW,
                           steps_per_delay: int = defaults.STEPS_PER_DELAY,
                           ) -> PersistenceReport:
    """Integrate the full system from phi and test the tail conditions.

    Passes iff the tail sup of I_h exceeds theta * I_h* and every component's
    tail sup is strictly positive. phi must seed the infection: I_h(0) > 0.
    """
    _require_theta(theta)
    star = _require_supercritical(p)
    if not DomainFlag.D.contains(phi):
        raise NotInDomainDError()
    horizon = t_end if t_end is not None else defaults.default_t_end(p.mu_h, p.mu_v)
    spec = IntegrationSpec(system=SystemKind.FULL, t_end=horizon,
                           steps_per_delay=steps_per_delay)
    tail = tail_stats(integrate(p, phi, spec), window)
    threshold = theta * star.i_h
    sup = tail.sup
    passes = (sup.i_h > threshold
              and sup.s_h > 0 and sup.i_h > 0 and sup.s_v > 0 and sup.i_v > 0)
    return PersistenceReport(theta=theta, threshold=threshold,
                             i_h_tail_sup=sup.i_h, tail=tail, passes=passes)
