"""Reproduction number and the two steady states.

R0^2 = c_vh * c_hv * beta_h / (mu_h^2 * mu_v). The disease-free state E0
always exists; the endemic state E* exists exactly when R0 > 1. Threshold
comparisons are made on R0^2 to avoid a sqrt rounding cliff at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams, State, rhs_full


def r0_squared(p: ModelParams) -> float:
    return p.c_vh * p.c_hv * p.beta_h / (p.mu_h * p.mu_h * p.mu_v)


def basic_reproduction_number(p: ModelParams) -> float:
    return math.sqrt(r0_squared(p))


def disease_free_equilibrium(p: ModelParams) -> State:
    return State(p.beta_h / p.mu_h, 0.0, p.beta_v / p.mu_v, 0.0)


def endemic_equilibrium(p: ModelParams) -> State | None:
    """Closed-form endemic state, or None when R0 <= 1 (compared on R0^2)."""
    r2 = r0_squared(p)
    if r2 <= 1.0:
        return None
    den_h = p.beta_h * p.c_hv + p.mu_v * p.mu_h * r2
    den_v = p.c_vh * p.mu_v + p.mu_v * p.mu_h * r2
    i_h = p.beta_h * p.mu_v * (r2 - 1.0) / den_h
    s_h = p.beta_h * (p.c_hv * p.beta_h / p.mu_h + p.mu_v) / den_h
    s_v = p.beta_v * (p.c_vh + p.mu_h) / den_v
    i_v = p.beta_v * p.mu_h * (r2 - 1.0) / den_v
    return State(s_h, i_h, s_v, i_v)


def equilibrium_residual(p: ModelParams, state: State) -> float:
    """Max-norm of the steady-state equations at `state`.

    Routed through rhs_full with the candidate in both time slots, so the
    closed forms above are checked against the dynamics, not against
    themselves.
    """
    return max(abs(v) for v in rhs_full(p, state, state))


@dataclass(frozen=True)
class EquilibriumSet:
    r0: float
    e0: State
    e_star: State | None


def equilibrium_set(p: ModelParams) -> EquilibriumSet:
    return EquilibriumSet(
        r0=basic_reproduction_number(p),
        e0=disease_free_equilibrium(p),
        e_star=endemic_equilibrium(p),
    )
