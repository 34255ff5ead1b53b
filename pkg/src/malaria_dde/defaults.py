"""Single home for every tunable default and numeric guard band.

======================  =========  ==================================
name                    value      used by
======================  =========  ==================================
STEPS_PER_DELAY         20         integrator mesh (h = tau / m)
RECORD_STRIDE           1          trajectory recording
TAIL_WINDOW             0.5        tail statistics ([w*t_end, t_end])
CLAMP_BAND              1e-9       negativity clamp/abort threshold
ROOT_XTOL               1e-12      real-root polish tolerance
SEARCH_MAX              50.0       real-root search half-width
ROOT_GRID_POINTS        10_000     sign-change scan resolution
DESCENT_SLACK_SCALE     1e-7       Lyapunov monotonicity slack scale
RESIDUAL_TOL            1e-10      endemic equilibrium residual bound
DEFAULT_THETA           0.5        persistence fraction
==========================================================================

t_end and the tau = 0 step size depend on the parameters, so they are
functions here rather than constants.
"""

from __future__ import annotations

STEPS_PER_DELAY = 20
RECORD_STRIDE = 1
TAIL_WINDOW = 0.5
CLAMP_BAND = 1e-9
ROOT_XTOL = 1e-12
SEARCH_MAX = 50.0
ROOT_GRID_POINTS = 10_000
DESCENT_SLACK_SCALE = 1e-7
RESIDUAL_TOL = 1e-10
DEFAULT_THETA = 0.5


def default_t_end(mu_h: float, mu_v: float) -> float:
    """Horizon long enough for the slow compartment to settle (40 e-folds)."""
    return 40.0 / min(mu_h, mu_v)


def default_ode_step(max_rate: float) -> float:
    """Step size for the undelayed (tau = 0) system."""
    return min(0.05, 0.1 / max_rate)
