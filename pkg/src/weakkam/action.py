"""Minimal action A_t(x, y) on the circle by quadrature and dynamic programming.

The one-step action uses a straight segment with midpoint quadrature,
h * (c + L(midpoint, delta/h)), where delta is the minimal periodic
displacement representative (ties at +/- 1/2 broken toward +1/2).
Longer times are handled by dynamic programming over intermediate grid
nodes, and minimizing chains can be polished by coordinate descent.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    ConfigError,
    RefinementWarning,
    VelocityWindowError,
)
from .hamiltonian import HamiltonianSpec, _legendre_batch, legendre

# velocity window: displacements beyond VELOCITY_WINDOW * h are rejected
VELOCITY_WINDOW = 6.0

DEFAULT_GRID_N = 512
DEFAULT_STEP = 0.01
MAX_STEP = 0.1


@dataclass
class ActionResult:
    """Minimal action value with its discrete minimizing curve.

    curve[0] and curve[-1] are the requested endpoints reduced mod 1;
    momenta are the Legendre maximizers of the first and last segment
    velocities.
    """

    value: float
    curve: np.ndarray
    momenta: Tuple[float, float]


def periodic_displacement(x, y):
    """Minimal representative of (y - x) mod 1, ties at 1/2 toward +1/2."""
    d = np.mod(np.asarray(y, dtype=float) - np.asarray(x, dtype=float), 1.0)
    return np.where(d <= 0.5, d, d - 1.0)


def periodic_distance(x, y):
    """Distance on the circle R/Z."""
    return np.abs(periodic_displacement(x, y))


def one_step_action(spec: HamiltonianSpec, x, y, h: float, c: float,
                    reverse: bool = False):
    """Short-time action h * (c + L(midpoint, delta/h)) along a straight
    segment from x to y.

    With ``reverse`` the reflected Lagrangian L(x, -v) is used, which
    turns the forward kernel into the backward one.  Broadcasts over
    arrays.
    """
    if h <= 0:
        raise ConfigError("one_step_action needs h > 0")
    delta = periodic_displacement(x, y)
    v = delta / h
    if np.any(np.abs(v) > VELOCITY_WINDOW):
        raise VelocityWindowError(
            f"displacement/h exceeds the velocity window {VELOCITY_WINDOW}")
    mid = np.mod(np.asarray(x, dtype=float) + 0.5 * delta, 1.0)
    val, _ = _legendre_batch(spec, mid, -v if reverse else v)
    out = h * (c + val)
    return float(out) if np.ndim(out) == 0 else out


def _dp_band(spec, grid_n, h, c, reverse=False):
    """Edge-cost band for one DP layer on the node lattice.

    band[k, i] is the one-step action from node (i - k_off[k]) to node i,
    where k_off runs over admissible displacements.  Midpoints live on the
    doubled lattice.
    """
    j_max = min(int(np.floor(VELOCITY_WINDOW * h * grid_n)), grid_n // 2)
    if j_max < 1:
        raise ConfigError(
            "empty feasible window: grid too coarse for this step")
    k_off = np.arange(-j_max, j_max + 1)
    v = (k_off / grid_n) / h
    i = np.arange(grid_n)
    # midpoint of the segment from node (i - k) to node i on the 2n lattice
    mid_idx = np.mod(2 * i[None, :] - k_off[:, None], 2 * grid_n)
    mids = mid_idx / (2.0 * grid_n)
    val, _ = _legendre_batch(spec, mids,
                             (-v if reverse else v)[:, None])
    return k_off, h * (c + val)


def compose_action(spec: HamiltonianSpec, x: float, y: float, t: float,
                   c: float, n_steps: Optional[int] = None,
                   grid_n: int = DEFAULT_GRID_N) -> ActionResult:
    """Minimal action A_t(x, y) by dynamic programming over grid nodes.

    The chain starts at the exact point x, passes through n_steps - 1
    intermediate grid nodes and ends at the exact point y.  Endpoint
    momenta come from the Legendre maximizers of the first/last segment
    velocities.
    """
    if t <= 0:
        raise ConfigError("compose_action needs t > 0")
    if grid_n < 64:
        raise ConfigError("compose_action needs grid_n >= 64")
    if n_steps is None:
        n_steps = max(1, int(round(t / DEFAULT_STEP)))
    if n_steps < 1:
        raise ConfigError("compose_action needs n_steps >= 1")
    n_steps = max(n_steps, int(np.ceil(t / MAX_STEP)))
    h = t / n_steps
    x = float(np.mod(x, 1.0))
    y = float(np.mod(y, 1.0))

    if n_steps == 1:
        value = one_step_action(spec, x, y, h, c)
        curve = np.array([x, y])
        return ActionResult(value=float(value), curve=curve,
                            momenta=_endpoint_momenta(spec, curve, h))

    nodes = np.arange(grid_n) / grid_n
    # first leg: exact x to every node within the window
    delta0 = periodic_displacement(x, nodes)
    ok0 = np.abs(delta0) <= VELOCITY_WINDOW * h
    if not np.any(ok0):
        raise ConfigError("empty feasible window on the first DP leg")
    val = np.full(grid_n, np.inf)
    mid0 = np.mod(x + 0.5 * delta0[ok0], 1.0)
    l0, _ = _legendre_batch(spec, mid0, delta0[ok0] / h)
    val[ok0] = h * (c + l0)

    back = np.zeros((n_steps - 2, grid_n), dtype=np.int64) \
        if n_steps > 2 else np.zeros((0, grid_n), dtype=np.int64)
    if n_steps > 2:
        k_off, band = _dp_band(spec, grid_n, h, c)
        idx = np.mod(np.arange(grid_n)[None, :] - k_off[:, None], grid_n)
        for layer in range(n_steps - 2):
            cand = val[idx] + band
            best = np.argmin(cand, axis=0)
            back[layer] = idx[best, np.arange(grid_n)]
            val = cand[best, np.arange(grid_n)]

    # last leg: every node within the window to exact y
    deltaT = periodic_displacement(nodes, y)
    okT = np.abs(deltaT) <= VELOCITY_WINDOW * h
    if not np.any(okT):
        raise ConfigError("empty feasible window on the last DP leg")
    costT = np.full(grid_n, np.inf)
    midT = np.mod(nodes[okT] + 0.5 * deltaT[okT], 1.0)
    lT, _ = _legendre_batch(spec, midT, deltaT[okT] / h)
    costT[okT] = h * (c + lT)
    total = val + costT
    j_last = int(np.argmin(total))
    value = float(total[j_last])

    # backtrack the interior chain
    chain = [j_last]
    for layer in range(n_steps - 3, -1, -1):
        chain.append(int(back[layer, chain[-1]]))
    chain.reverse()
    curve = np.concatenate(([x], nodes[chain], [y]))
    return ActionResult(value=value, curve=curve,
                        momenta=_endpoint_momenta(spec, curve, h))


def _endpoint_momenta(spec, curve, h):
    v0 = float(periodic_displacement(curve[0], curve[1])) / h
    vT = float(periodic_displacement(curve[-2], curve[-1])) / h
    p0 = legendre(spec, float(curve[0]), v0).argmax_p
    pT = legendre(spec, float(curve[-1]), vT).argmax_p
    return (p0, pT)


def _lift_curve(curve):
    """Unwrap a mod-1 chain into a continuous real-line representative."""
    deltas = periodic_displacement(curve[:-1], curve[1:])
    return np.concatenate(([curve[0]], curve[0] + np.cumsum(deltas)))


def _segment_cost(spec, za, zb, h, c):
    # za, zb live on the real line here; the segment velocity is exact
    v = (zb - za) / h
    if abs(v) > VELOCITY_WINDOW:
        return np.inf
    val, _ = _legendre_batch(spec, np.mod(0.5 * (za + zb), 1.0),
                             np.asarray(v))
    return h * (c + float(val))


def minimizing_curve(spec: HamiltonianSpec, x: float, y: float, t: float,
                     c: float, n_steps: Optional[int] = None,
                     grid_n: int = DEFAULT_GRID_N,
                     max_sweeps: int = 200) -> ActionResult:
    """Refine the DP chain by coordinate descent on interior nodes.

    Interior positions are released from the lattice and optimized one at
    a time (bounded scalar minimization on the unwrapped chain) until the
    total action decreases by less than 1e-10 per sweep.
    """
    base = compose_action(spec, x, y, t, c, n_steps=n_steps, grid_n=grid_n)
    m = len(base.curve) - 1
    h = t / m
    if m < 2:
        return base
    z = _lift_curve(base.curve)
    value = sum(_segment_cost(spec, z[k], z[k + 1], h, c) for k in range(m))
    window = VELOCITY_WINDOW * h
    converged = False
    for _ in range(max_sweeps):
        improved = 0.0
        for k in range(1, m):
            za, zb = z[k - 1], z[k + 1]
            cur = (_segment_cost(spec, za, z[k], h, c)
                   + _segment_cost(spec, z[k], zb, h, c))
            lo = max(za - window, zb - window)
            hi = min(za + window, zb + window)
            if lo >= hi:
                continue
            res = minimize_scalar(
                lambda zz: _segment_cost(spec, za, zz, h, c)
                + _segment_cost(spec, zz, zb, h, c),
                bounds=(lo, hi), method="bounded",
                options={"xatol": 1e-12})
            if res.fun < cur:
                improved += cur - res.fun
                z[k] = res.x
        value -= improved
        if improved < 1e-10:
            converged = True
            break
    if not converged:
        warnings.warn("coordinate descent hit the sweep cap; returning the "
                      "best curve found", RefinementWarning)
    curve = np.mod(z, 1.0)
    value = sum(_segment_cost(spec, z[k], z[k + 1], h, c) for k in range(m))
    return ActionResult(value=float(value), curve=curve,
                        momenta=_endpoint_momenta(spec, curve, h))


def euler_lagrange_residual(spec: HamiltonianSpec, curve, t: float,
                            c: float) -> float:
    """Max interior stationarity defect of a discrete chain.

    Central-difference derivative of the two adjacent segment costs with
    respect to each interior node; zero for an exact discrete minimizer.
    """
    z = _lift_curve(np.asarray(curve, dtype=float))
    m = len(z) - 1
    h = t / m
    d = 1e-6
    worst = 0.0
    for k in range(1, m):
        f = lambda zz: (_segment_cost(spec, z[k - 1], zz, h, c)
                        + _segment_cost(spec, zz, z[k + 1], h, c))
        g = (f(z[k] + d) - f(z[k] - d)) / (2.0 * d)
        worst = max(worst, abs(g))
    return worst
