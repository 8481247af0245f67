"""Discrete semi-concavity calculus on periodic grid functions.

Semi-concavity and semi-convexity constants are read off nodal second
differences; divergence (a kink) is operationalized as instability of the
constant under grid refinement, since no finite grid proves
unboundedness.  Super-differential intervals and the quadratic upper
envelope use the periodic distance with a window of 1/4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .action import periodic_displacement
from .errors import KTooSmallError
from .laxoleinik import GridFunction

# half-width of the comparison window for super-differential tests
WINDOW = 0.25

# refinement-stability bound: constants may grow at most this factor
# from the half grid to the full grid
STABLE_RATIO = 1.5


@dataclass(frozen=True)
class RegularityProfile:
    """Second-difference profile with derived regularity constants.

    k_plus bounds the upward curvature (semi-concavity constant),
    k_minus the downward one (semi-convexity constant); ``stable`` holds
    when neither grows by more than 1.5x from the half grid.
    """

    second_differences: np.ndarray
    k_plus: float
    k_minus: float
    stable: bool


def _k_constants(values: np.ndarray) -> Tuple[float, float]:
    n = len(values)
    d2 = (np.roll(values, -1) - 2.0 * values + np.roll(values, 1)) \
        * float(n) ** 2
    return max(0.0, float(d2.max()) / 2.0), max(0.0, -float(d2.min()) / 2.0)


def regularity_profile(u: GridFunction) -> RegularityProfile:
    """Nodal second differences and refinement-stable curvature bounds."""
    d2 = u.second_differences()
    k_plus = max(0.0, float(d2.max()) / 2.0)
    k_minus = max(0.0, -float(d2.min()) / 2.0)
    kp_half, km_half = _k_constants(u.values[::2])
    stable = (k_plus <= STABLE_RATIO * kp_half + 1e-8) \
        and (k_minus <= STABLE_RATIO * km_half + 1e-8)
    return RegularityProfile(second_differences=d2, k_plus=k_plus,
                             k_minus=k_minus, stable=stable)


def superdifferential_interval(u: GridFunction, i: int, K: float
                               ) -> Optional[Tuple[float, float]]:
    """Slopes p with u(z) - u(x_i) <= p (z - x_i) + K (z - x_i)^2 for all
    grid z within distance 1/4 of x_i.

    Returns (lo, hi), or None when no slope works (an upward kink).
    Grid points to the right of x_i force the lower bound, points to the
    left force the upper bound.
    """
    n = u.n
    i = int(i) % n
    m = n // 4
    k = np.arange(1, m + 1)
    du_right = u.values[(i + k) % n] - u.values[i]
    du_left = u.values[(i - k) % n] - u.values[i]
    delta = k / n
    lo = float(np.max(du_right / delta - K * delta))
    hi = float(np.min(-du_left / delta + K * delta))
    if lo > hi + 1e-12:
        return None
    return lo, hi


@dataclass(frozen=True)
class QuadraticEnvelope:
    """Family of anchored quadratics f_i(z) = u_i + p_i d + K d^2 whose
    windowed minimum reconstructs u.

    Each quadratic is only compared within distance 1/4 of its anchor;
    ``covered`` marks nodes reached by at least one anchor window, and
    the reconstruction error is the sup over covered nodes.
    """

    anchor_x: np.ndarray
    anchor_value: np.ndarray
    anchor_slope: np.ndarray
    k: float
    covered: np.ndarray
    reconstruction_error: float

    def evaluate(self, z):
        """Windowed min over the family; +inf outside all windows."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        delta = periodic_displacement(self.anchor_x[:, None], z[None, :])
        f = self.anchor_value[:, None] + self.anchor_slope[:, None] * delta \
            + self.k * delta * delta
        f = np.where(np.abs(delta) <= WINDOW, f, np.inf)
        out = f.min(axis=0)
        return out if out.shape != (1,) else float(out[0])


def quadratic_envelope(u: GridFunction, K: float,
                       tol: float = 0.02) -> QuadraticEnvelope:
    """Build the quadratic upper envelope at curvature K.

    Anchors are the nodes with a nonempty super-differential interval
    (slope = interval midpoint).  Raises when the windowed-min
    reconstruction misses u by more than ``tol`` at a covered node,
    which signals K below the true semi-concavity constant.
    """
    n = u.n
    xs, vals, slopes = [], [], []
    for i in range(n):
        interval = superdifferential_interval(u, i, K)
        if interval is None:
            continue
        xs.append(i / n)
        vals.append(u.values[i])
        slopes.append(0.5 * (interval[0] + interval[1]))
    anchor_x = np.asarray(xs)
    anchor_value = np.asarray(vals)
    anchor_slope = np.asarray(slopes)
    nodes = u.nodes
    if len(xs) == 0:
        covered = np.zeros(n, dtype=bool)
        err = np.inf
    else:
        delta = periodic_displacement(anchor_x[:, None], nodes[None, :])
        f = anchor_value[:, None] + anchor_slope[:, None] * delta \
            + K * delta * delta
        f = np.where(np.abs(delta) <= WINDOW, f, np.inf)
        recon = f.min(axis=0)
        covered = np.isfinite(recon)
        err = float(np.max(np.abs(recon[covered] - u.values[covered]))) \
            if covered.any() else np.inf
    if err > tol:
        raise KTooSmallError(
            f"envelope reconstruction error {err:.3g} exceeds {tol:.3g}; "
            "K is below the semi-concavity constant")
    return QuadraticEnvelope(anchor_x=anchor_x, anchor_value=anchor_value,
                             anchor_slope=anchor_slope, k=K, covered=covered,
                             reconstruction_error=err)


def c11_test(u: GridFunction) -> Tuple[bool, float, float]:
    """C^{1,1} at grid scale: both curvature constants finite and stable
    under refinement.  Returns (flag, k_plus, k_minus)."""
    prof = regularity_profile(u)
    flag = bool(prof.stable and np.isfinite(prof.k_plus)
                and np.isfinite(prof.k_minus))
    return flag, prof.k_plus, prof.k_minus
