"""Linear stability through the transcendental factor G.

At either steady state the linearization's characteristic function factors
into (lam + mu_h)(lam + mu_v) (two exact negative roots) times

    G(lam) = lam^2 + a1*lam + a2 + a3*exp(-lam*tau),

with one (a1, a2, a3) triple per equilibrium. Three closed-form verdicts
come out of G:

* routh_hurwitz_tau0: at tau = 0, both roots of the quadratic
  lam^2 + a1*lam + (a2 + a3) lie in the open left half plane iff a1 > 0 and
  a2 + a3 > 0.
* imaginary_axis_root_exists: G(iw) = 0 forces
  w^4 + (a1^2 - 2a2) w^2 + (a2^2 - a3^2) = 0; existence of a real w >= 0 is
  decided from that quadratic-in-w^2 without iteration. For both coefficient
  families here a1^2 - 2a2 > 0, so the verdict reduces to a2^2 - a3^2 <= 0.
* rightmost_real_root: bracket-and-polish on the real axis.

Delay-independent stability then follows the usual argument: stable at
tau = 0 plus no imaginary-axis crossing for any tau.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import defaults
from .equilibria import disease_free_equilibrium, endemic_equilibrium, r0_squared
from .errors import EndemicAbsentError, NoBracketError
from .model import ModelParams


@dataclass(frozen=True)
class DfeCharCoeffs:
    """Transcendental-factor coefficients at the disease-free state."""

    q1: float
    q2: float
    q3: float
    tau: float
    mu_h: float
    mu_v: float

    a1 = property(lambda self: self.q1)
    a2 = property(lambda self: self.q2)
    a3 = property(lambda self: self.q3)

    @classmethod
    def from_params(cls, p: ModelParams) -> "DfeCharCoeffs":
        u1 = p.c_hv * p.beta_v / p.mu_v
        u2 = p.c_vh * p.beta_h * p.mu_v / (p.beta_v * p.mu_h)
        return cls(q1=p.mu_h + p.mu_v, q2=p.mu_v * p.mu_h, q3=-(u1 * u2),
                   tau=p.tau, mu_h=p.mu_h, mu_v=p.mu_v)


@dataclass(frozen=True)
class EndemicCharCoeffs:
    """Transcendental-factor coefficients at the endemic state.

    m1..m5 are the linearization weights evaluated at E*; kept because the
    identity p1^2 - 2p2 = (mu_h + m1)^2 + (mu_v + m5)^2 is a useful invariant.
    """

    m1: float
    m2: float
    m3: float
    m4: float
    m5: float
    p1: float
    p2: float
    p3: float
    tau: float
    mu_h: float
    mu_v: float

    a1 = property(lambda self: self.p1)
    a2 = property(lambda self: self.p2)
    a3 = property(lambda self: self.p3)

    @classmethod
    def from_params(cls, p: ModelParams) -> "EndemicCharCoeffs":
        star = endemic_equilibrium(p)
        if star is None:
            raise EndemicAbsentError()
        n_v = star.n_v
        m1 = p.c_vh * star.i_v / n_v
        m2 = p.c_vh * star.i_v * star.s_h / (n_v * n_v)
        m3 = p.c_vh * star.s_v * star.s_h / (n_v * n_v)
        m4 = p.c_hv * star.s_v
        m5 = p.c_hv * star.i_h
        return cls(m1=m1, m2=m2, m3=m3, m4=m4, m5=m5,
                   p1=p.mu_h + m1 + p.mu_v + m5,
                   p2=(p.mu_h + m1) * (p.mu_v + m5),
                   p3=-m4 * (m3 + m2),
                   tau=p.tau, mu_h=p.mu_h, mu_v=p.mu_v)


CharCoeffs = DfeCharCoeffs | EndemicCharCoeffs


def char_eval(coeffs: CharCoeffs, lam: complex) -> complex:
    """G(lam), complex-valued."""
    lam = complex(lam)
    return lam * lam + coeffs.a1 * lam + coeffs.a2 + coeffs.a3 * cmath.exp(-lam * coeffs.tau)


def full_char_eval(coeffs: CharCoeffs, lam: complex) -> complex:
    """(lam + mu_h)(lam + mu_v) * G(lam): the full 4th-degree factorization."""
    lam = complex(lam)
    return (lam + coeffs.mu_h) * (lam + coeffs.mu_v) * char_eval(coeffs, lam)


def routh_hurwitz_tau0(coeffs: CharCoeffs) -> bool:
    return coeffs.a1 > 0 and coeffs.a2 + coeffs.a3 > 0


def imaginary_axis_root_exists(coeffs: CharCoeffs) -> bool:
    """Whether G has a root iw with real w >= 0, for the stored coefficients
    at any delay. Decided in closed form from the resolvent quartic."""
    a1, a2, a3 = coeffs.a1, coeffs.a2, coeffs.a3
    big_a = a1 * a1 - 2.0 * a2
    big_b = a2 * a2 - a3 * a3
    if big_b <= 0.0:
        return True
    # both roots of z^2 + A z + B (B > 0) are negative or complex unless A <= 0
    return big_a <= 0.0 and big_a * big_a >= 4.0 * big_b


def _g_real(coeffs: CharCoeffs, lam: float) -> float:
    e = -lam * coeffs.tau
    if e > 700.0:  # exp would overflow; the a3-term dominates with a3's sign
        return math.inf if coeffs.a3 > 0 else -math.inf
    return lam * lam + coeffs.a1 * lam + coeffs.a2 + coeffs.a3 * math.exp(e)


def rightmost_real_root(coeffs: CharCoeffs,
                        search_max: float = defaults.SEARCH_MAX) -> float | None:
    """Largest real root of G within [-search_max, search_max], or None.

    G(0) < 0 guarantees a positive root (G grows like lam^2): bracket by
    doubling from [0, 1] and polish. Otherwise scan a 10^4-point sign-change
    grid over the full interval and polish every bracket.
    """
    g = lambda x: _g_real(coeffs, x)
    g0 = g(0.0)
    if g0 < 0.0:
        s = min(1.0, search_max)
        while g(s) <= 0.0:
            s *= 2.0
            if s > search_max:
                raise NoBracketError(search_max)
        return float(brentq(g, 0.0, s, xtol=defaults.ROOT_XTOL))

    xs = np.linspace(-search_max, search_max, defaults.ROOT_GRID_POINTS)
    with np.errstate(over="ignore"):
        gs = xs * xs + coeffs.a1 * xs + coeffs.a2 + coeffs.a3 * np.exp(-xs * coeffs.tau)
    roots = [float(x) for x, v in zip(xs, gs) if v == 0.0]
    sign_flip = np.nonzero(np.sign(gs[:-1]) * np.sign(gs[1:]) < 0)[0]
    for i in sign_flip:
        roots.append(float(brentq(g, xs[i], xs[i + 1], xtol=defaults.ROOT_XTOL)))
    return max(roots) if roots else None


class Classification(enum.Enum):
    LAS = "LAS"
    UNSTABLE = "Unstable"
    CRITICAL = "Critical"


class EquilibriumKind(enum.Enum):
    DISEASE_FREE = "E0"
    ENDEMIC = "E_star"


@dataclass(frozen=True)
class StabilityReport:
    which: EquilibriumKind
    classification: Classification
    rightmost_real_root: float | None
    imag_axis_root_exists: bool
    routh_hurwitz_tau0: bool
    factor_roots: tuple[float, float]

    def as_lines(self, prefix: str = "stability") -> list[str]:
        key = f"{prefix}.{self.which.value.lower()}"
        rr = "none" if self.rightmost_real_root is None \
            else f"{self.rightmost_real_root:.17g}"
        return [
            f"{key}.classification = {self.classification.value}",
            f"{key}.rightmost_real_root = {rr}",
            f"{key}.imag_axis_root_exists = {str(self.imag_axis_root_exists).lower()}",
            f"{key}.routh_hurwitz_tau0 = {str(self.routh_hurwitz_tau0).lower()}",
            f"{key}.factor_roots = {self.factor_roots[0]:.17g},{self.factor_roots[1]:.17g}",
        ]


def classify(p: ModelParams, which: EquilibriumKind,
             search_max: float = defaults.SEARCH_MAX) -> StabilityReport:
    """Stability verdict plus the numerical evidence behind it.

    E0: LAS / Critical / Unstable by R0 below / at / above 1 (compared on
    R0^2). E*: exists only for R0 > 1 (EndemicAbsentError otherwise) and is
    then LAS at every delay.
    """
    r2 = r0_squared(p)
    if which is EquilibriumKind.ENDEMIC:
        coeffs: CharCoeffs = EndemicCharCoeffs.from_params(p)
        verdict = Classification.LAS
    else:
        disease_free_equilibrium(p)
        coeffs = DfeCharCoeffs.from_params(p)
        if r2 < 1.0:
            verdict = Classification.LAS
        elif r2 > 1.0:
            verdict = Classification.UNSTABLE
        else:
            verdict = Classification.CRITICAL
    return StabilityReport(
        which=which,
        classification=verdict,
        rightmost_real_root=rightmost_real_root(coeffs, search_max),
        imag_axis_root_exists=imaginary_axis_root_exists(coeffs),
        routh_hurwitz_tau0=routh_hurwitz_tau0(coeffs),
        factor_roots=(-p.mu_h, -p.mu_v),
    )
