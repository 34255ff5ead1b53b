"""Shared reference parameter sets, randomized samplers, and the acceptance
summary hook (one PASS/FAIL line per criterion at the end of the run)."""

import re
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import settings

from malaria_dde import HistorySegment, ModelParams, r0_squared

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")

# One reference set per threshold regime. All rates are dyadic so closed
# forms evaluate without rounding.
P_SUPER = ModelParams(beta_h=2.0, beta_v=5.0, mu_h=0.5, mu_v=0.1,
                      c_vh=0.2, c_hv=0.1, tau=1.0)       # R0^2 = 1.6
P_SUB = replace(P_SUPER, c_vh=0.05, c_hv=0.05)           # R0^2 = 0.2
P_CRIT = ModelParams(beta_h=1.0, beta_v=5.0, mu_h=1.0, mu_v=0.25,
                     c_vh=0.5, c_hv=0.5, tau=1.0)        # R0^2 = 1 exactly

TAU_CHOICES = (0.0, 0.5, 1.0, 2.0)


def draw_params(rng: np.random.Generator, tau: float | None = None) -> ModelParams:
    """A positive parameter set with no constraint on the regime."""
    return ModelParams(
        beta_h=rng.uniform(0.5, 5.0),
        beta_v=rng.uniform(0.5, 8.0),
        mu_h=rng.uniform(0.05, 1.0),
        mu_v=rng.uniform(0.05, 1.0),
        c_vh=rng.uniform(0.01, 1.0),
        c_hv=rng.uniform(0.01, 1.0),
        tau=float(rng.choice(TAU_CHOICES)) if tau is None else tau,
    )


def draw_in_regime(rng, lo, hi, tau=None):
    """Rescale c_vh so the squared reproduction number lands in [lo, hi]."""
    p = draw_params(rng, tau)
    target = rng.uniform(lo, hi)
    return replace(p, c_vh=p.c_vh * target / r0_squared(p))


def draw_supercritical(rng, tau=None):
    return draw_in_regime(rng, 1.2, 9.0, tau)


def draw_subcritical(rng, tau=None):
    return draw_in_regime(rng, 0.05, 0.85, tau)


def constant_history(p: ModelParams, rng, infected_floor: float = 0.01
                     ) -> HistorySegment:
    """Constant history scaled to the disease-free pools.

    infected_floor > 0 keeps the infection seeded (I_h(0) > 0); pass 0.0 to
    allow histories on the boundary of the cone.
    """
    return HistorySegment.constant((
        rng.uniform(0.2, 2.0) * p.s_h0,
        rng.uniform(infected_floor, 1.0) * p.s_h0,
        rng.uniform(0.2, 2.0) * p.s_v0,
        rng.uniform(0.01, 1.0) * p.s_v0), p.tau)


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)


CRITERIA = {
    1: "equilibrium closed forms and residuals",
    2: "reproduction-number identities",
    3: "spectral trichotomy",
    4: "integrator order and conservation",
    5: "global convergence by regime",
    6: "Lyapunov descent",
    7: "weak persistence",
    8: "delay independence",
}

_ACCEPT = re.compile(r"test_acceptance\.py::test_c(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[int, bool] = {}
    for status, ok in (("passed", True), ("failed", False), ("error", False)):
        for rep in terminalreporter.stats.get(status, []):
            m = _ACCEPT.search(getattr(rep, "nodeid", ""))
            if m and getattr(rep, "when", "call") == "call":
                k = int(m.group(1))
                verdicts[k] = verdicts.get(k, True) and ok
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(verdicts):
        word = "PASS" if verdicts[k] else "FAIL"
        terminalreporter.write_line(f"criterion {k} ({CRITERIA[k]}): {word}")
