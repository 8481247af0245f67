"""Aubry set estimation through strict sub-solution ensembles.

A single sub-solution says nothing about where strictness is forced;
an average of many does, because convexity of H in p turns disagreement
between members into strict inequality.  Nodes where even the ensemble
average saturates the level are the Aubry estimate, and their momenta
form the estimated lift.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import EnsembleError, PreconditionError, ResolutionError, \
    WeakKAMWarning
from .flow import Trajectory
from .hamiltonian import HamiltonianSpec, eval_h, _dh_dp
from .laxoleinik import GridFunction, DEFAULT_GRID_N, subsolution_report
from .regularize import lasry_lions, _fit_steps
from .laxoleinik import evolve

# strictness threshold scale, tied to the sub-solution tolerance
EPSILON_COEFF = 0.02

# member generation: trig-polynomial degree cap and slope budget
SEED_DEGREE = 4
SEED_SLOPE = 0.35
MAX_SEED_STEPS = 200
REFINE_STEPS = 64

# two-sided smoothing time for members, shrunk when a member's own
# curvature makes backward focusing unsafe
MEMBER_SMOOTHING = 0.05


@dataclass(frozen=True)
class AubryEstimate:
    """Estimated projected Aubry set and its lift.

    strictness holds alpha - H(x_i, Dw(x_i)) per node; points are the
    node indices where it falls below epsilon; lift pairs each flagged
    node with its momentum Dw(x_i).
    """

    alpha: float
    strictness: GridFunction
    points: np.ndarray
    lift: np.ndarray
    epsilon: float


def _random_member_seed(rng: np.random.Generator, n: int) -> GridFunction:
    # smooth trig polynomial with decaying spectrum, slope-normalized
    ks = np.arange(1, SEED_DEGREE + 1)
    a = rng.normal(size=SEED_DEGREE) / ks ** 2
    b = rng.normal(size=SEED_DEGREE) / ks ** 2
    x = np.arange(n) / n
    vals = np.zeros(n)
    for k, ak, bk in zip(ks, a, b):
        vals += ak * np.cos(2 * np.pi * k * x) + bk * np.sin(2 * np.pi * k * x)
    u = GridFunction(n, vals)
    peak = float(np.max(np.abs(u.gradient())))
    if peak > 0.0:
        u = GridFunction(n, vals * (SEED_SLOPE / peak))
    return u


def _clip_into_cone(spec: HamiltonianSpec, u: GridFunction,
                    c: float) -> Optional[GridFunction]:
    # largest amplitude scale that puts the seed comfortably inside the
    # numerical sub-solution cone; exists iff the zero function is
    # itself inside (per-node residual is convex in the scale, so the
    # feasible scales form an interval and bisection is exact)
    target = 0.5 * 0.01 * (1.0 + abs(c))
    du = u.gradient()
    x = u.nodes

    def worst(lam):
        return float(np.max(eval_h(spec, x, lam * du))) - c

    if worst(0.0) > target:
        return None
    if worst(1.0) <= target:
        return u
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if worst(mid) <= target:
            lo = mid
        else:
            hi = mid
    return GridFunction(u.n, lo * u.values)


def _push_to_subsolution(spec: HamiltonianSpec, u: GridFunction, c: float,
                         h: float, direction: str) -> GridFunction:
    # semigroup steps drive any initial condition toward the
    # sub-solution cone; stop shortly after the first nodewise pass: a
    # few extra steps shrink seed noise near equilibria while the early
    # stop keeps members from collapsing onto the common fixed point.
    # A member that exhausts the budget is still returned; the
    # subsolution_report after smoothing is the survival gate.
    tol = 0.01 * (1.0 + abs(c))
    for _ in range(MAX_SEED_STEPS):
        resid = eval_h(spec, u.nodes, u.gradient()) - c
        if float(np.max(resid)) <= tol:
            break
        u = evolve(spec, u, h, h, c, direction=direction)
    return evolve(spec, u, REFINE_STEPS * h, h, c, direction=direction)


def ensemble_subsolution(spec: HamiltonianSpec, c: float,
                         n_members: int = 16, seed: int = 0,
                         n: int = DEFAULT_GRID_N,
                         h: float = 0.01) -> GridFunction:
    """Average of n_members independently generated smooth sub-solutions
    at level c.

    Each member starts as a random trigonometric polynomial and is
    evolved until it passes the nodewise residual check, then smoothed
    two-sidedly; members whose smoothed form fails subsolution_report
    are discarded with a warning.  Raises when fewer than half survive.
    Seeds are pushed in direction-paired fashion (each seed once with
    the descending semigroup, once with the ascending one): the two
    limits differ in gradient away from the Aubry set, so pairing keeps
    the average strict there and cancels its momentum at equilibria.
    Members are mean-centered before averaging, so the result is a
    mean-zero sub-solution (convex combination preserves the level).
    """
    if n_members < 8:
        raise EnsembleError(f"need n_members >= 8, got {n_members}")
    rng = np.random.default_rng(seed)
    members = []
    plan = []
    for _ in range(n_members - n_members // 2):
        u0 = _random_member_seed(rng, n)
        plan.append((u0, "forward"))
        if len(plan) < n_members:
            plan.append((u0, "backward"))
    for u0, direction in plan[:n_members]:
        clipped = _clip_into_cone(spec, u0, c)
        if clipped is not None:
            # seed fits the cone after rescaling: skip the entry pushes,
            # which stall when the admissible slope band is narrow
            # everywhere (e.g. a flat potential), and refine directly
            pushed = evolve(spec, clipped, REFINE_STEPS * h, h, c,
                            direction=direction)
        else:
            pushed = _push_to_subsolution(spec, u0, c, h, direction)
        # the convexifying leg focuses after time ~ 1/k_plus of its
        # input; keep the smoothing window below that scale per member
        d2 = pushed.second_differences()
        k_plus = max(0.0, float(d2.max()) / 2.0)
        t = min(MEMBER_SMOOTHING, 0.5 / max(k_plus, 1.0))
        t = max(t, 2.0 / n)
        res = lasry_lions(spec, pushed, t, 0.5 * t, c, check_input=False)
        if not res.report.passed:
            warnings.warn("member failed the sub-solution report after "
                          "smoothing; discarded", WeakKAMWarning,
                          stacklevel=2)
            continue
        members.append(res.w)
    if len(members) < max(1, n_members // 2):
        raise EnsembleError(
            f"only {len(members)} of {n_members} members survived")
    stack = np.stack([m.values - m.mean() for m in members])
    return GridFunction(n, stack.mean(axis=0))


def aubry_points(spec: HamiltonianSpec, w: GridFunction, alpha: float,
                 epsilon: Optional[float] = None) -> AubryEstimate:
    """Flag the nodes where the ensemble average saturates level alpha.

    strictness(x_i) = alpha - H(x_i, Dw(x_i)); nodes with strictness at
    most epsilon (default 0.02*(1+|alpha|)) are flagged.  Raises when w
    is not a sub-solution at alpha or when nothing is flagged.
    """
    if epsilon is None:
        epsilon = EPSILON_COEFF * (1.0 + abs(alpha))
    rep = subsolution_report(spec, w, alpha)
    if not rep.passed:
        raise PreconditionError(
            "ensemble average fails subsolution_report at level "
            f"{alpha:.6g} (max residual {rep.max_residual:.3g})")
    du = w.gradient()
    strict_vals = alpha - eval_h(spec, w.nodes, du)
    mask = strict_vals <= epsilon
    if not mask.any():
        raise ResolutionError(
            f"no node is within {epsilon:.3g} of saturation; "
            "increase epsilon or the ensemble size")
    points = np.flatnonzero(mask)
    lift = np.column_stack([w.nodes[points], du[points]])
    return AubryEstimate(alpha=alpha, strictness=GridFunction(w.n,
                                                              strict_vals),
                         points=points, lift=lift, epsilon=epsilon)


def equal_differential_check(u1: GridFunction, u2: GridFunction,
                             estimate: AubryEstimate) -> float:
    """Max |Du1 - Du2| over the flagged nodes; critical sub-solutions
    share their differential on the Aubry set, so this should sit at
    discretization scale."""
    if u1.n != u2.n:
        raise PreconditionError("grid sizes differ")
    g1 = u1.gradient()[estimate.points]
    g2 = u2.gradient()[estimate.points]
    return float(np.max(np.abs(g1 - g2)))


def calibration_residual(spec: HamiltonianSpec, u: GridFunction,
                         trajectory: Trajectory, alpha: float) -> float:
    """Worst calibration defect of u along the trajectory.

    F(t) = u(x(t)) - integral of (alpha + L) should be constant along a
    calibrated curve; the residual is max F - min F, the largest defect
    over all sub-intervals.
    """
    if trajectory.batch:
        raise PreconditionError("calibration takes a single trajectory")
    xs_mod = np.mod(trajectory.xs, 1.0)
    vs = _dh_dp(spec, xs_mod, trajectory.ps)
    lagr = trajectory.ps * vs - eval_h(spec, xs_mod, trajectory.ps)
    running = cumulative_trapezoid(alpha + lagr, trajectory.ts, initial=0.0)
    f = u(xs_mod) - running
    return float(np.max(f) - np.min(f))


def fixed_value_check(spec: HamiltonianSpec, u: GridFunction,
                      estimate: AubryEstimate, t: float) -> float:
    """Max |evolve(u, t) - u| over flagged nodes, both time directions.

    On the Aubry set both semigroups fix critical sub-solutions
    pointwise, so the deviation should be O(discretization).
    """
    if not (0.0 < t <= 0.5):
        raise PreconditionError(f"need 0 < t <= 0.5, got {t}")
    m, h = _fit_steps(t)
    fw = evolve(spec, u, t, h, estimate.alpha, direction="forward")
    bw = evolve(spec, u, t, h, estimate.alpha, direction="backward")
    dev_f = np.abs(fw.values - u.values)[estimate.points]
    dev_b = np.abs(bw.values - u.values)[estimate.points]
    return float(max(dev_f.max(), dev_b.max()))
