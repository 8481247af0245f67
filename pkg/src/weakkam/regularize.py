"""Two-sided smoothing of sub-solutions.

A backward step of length t semi-convexifies; a forward step of length
s <= t semi-concavifies without destroying the semi-convexity gained,
so the composition lands in C^{1,1} at grid scale while staying a
sub-solution at the same level.  The right s is not known a priori:
``small_s_search`` halves s until the curvature constants of the
smoothed function stop depending on the grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .action import DEFAULT_STEP, MAX_STEP
from .errors import ConfigError, PreconditionError, ResolutionError, \
    WeakKAMWarning
from .hamiltonian import HamiltonianSpec
from .laxoleinik import GridFunction, SubSolutionReport, evolve, \
    subsolution_report
from .semiconcave import STABLE_RATIO, regularity_profile

# default smoothing-time schedule for the density sweep: (t, s) pairs
# with s = t/2, t halving from 1/2 down to 1/64
DEFAULT_SCHEDULE: Tuple[Tuple[float, float], ...] = tuple(
    (0.5 ** k, 0.5 ** (k + 1)) for k in range(1, 7))


@dataclass(frozen=True)
class RegularizationResult:
    """Smoothed sub-solution with its certificates.

    ``report`` re-checks the sub-solution property at the same level;
    k_plus/k_minus are the curvature constants of the output and
    ``stable`` records their grid-refinement stability.
    """

    w: GridFunction
    t_used: float
    s_used: float
    report: SubSolutionReport
    k_plus: float
    k_minus: float
    sup_dist_to_input: float
    stable: bool


def _fit_steps(t: float) -> Tuple[int, float]:
    # pick a uniform step count so the step divides t exactly and stays
    # close to DEFAULT_STEP, never above MAX_STEP
    m = max(1, round(t / DEFAULT_STEP), math.ceil(t / MAX_STEP))
    return m, t / m


def lasry_lions(spec: HamiltonianSpec, u: GridFunction, t: float, s: float,
                c: float, check_input: bool = True) -> RegularizationResult:
    """Backward evolution for time t, then forward for time s <= t.

    Input must be a sub-solution at level c (checked unless
    ``check_input`` is False).  The output is again a sub-solution; an
    unstable curvature profile (s too large for the kink structure) is
    flagged in the result, not raised.
    """
    if not (t >= s > 0.0):
        raise ConfigError(f"need t >= s > 0, got t={t}, s={s}")
    if check_input:
        rep_in = subsolution_report(spec, u, c)
        if not rep_in.passed:
            raise PreconditionError(
                "input is not a sub-solution at level "
                f"{c:.6g} (max residual {rep_in.max_residual:.3g})")
    mt, ht = _fit_steps(t)
    ms, hs = _fit_steps(s)
    v = evolve(spec, u, t, ht, c, direction="backward")
    w = evolve(spec, v, s, hs, c, direction="forward")
    prof = regularity_profile(w)
    report = subsolution_report(spec, w, c)
    sup_dist = float(np.max(np.abs(w.values - u.values)))
    return RegularizationResult(w=w, t_used=t, s_used=s, report=report,
                                k_plus=prof.k_plus, k_minus=prof.k_minus,
                                sup_dist_to_input=sup_dist, stable=prof.stable)


def _refined(u: GridFunction) -> GridFunction:
    # resample onto the doubled grid through the periodic spline
    return GridFunction.from_callable(u, 2 * u.n)


def small_s_search(spec: HamiltonianSpec, u: GridFunction, t: float,
                   c: float) -> RegularizationResult:
    """Find the largest s = t/2^k whose smoothing is grid-converged.

    For each candidate the semi-convexity constant of the smoothed
    function is compared between the working grid and its refinement;
    the first s with ratio below 1.5 wins.  Raises when s would sink
    below the time step, where the grid cannot certify convergence.
    """
    if t <= 0.0:
        raise ConfigError(f"need t > 0, got t={t}")
    rep_in = subsolution_report(spec, u, c)
    if not rep_in.passed:
        raise PreconditionError(
            "input is not a sub-solution at level "
            f"{c:.6g} (max residual {rep_in.max_residual:.3g})")
    u_fine = _refined(u)
    spacing = 1.0 / u.n
    s = 0.5 * t
    while s >= spacing * (1.0 - 1e-12):
        res = lasry_lions(spec, u, t, s, c, check_input=False)
        res_fine = lasry_lions(spec, u_fine, t, s, c, check_input=False)
        if res_fine.k_minus <= STABLE_RATIO * res.k_minus + 1e-8:
            return res
        s *= 0.5
    raise ResolutionError(
        f"no s >= grid spacing {spacing:.3g} gave a grid-converged "
        "smoothing; refine the grid")


def density_sweep(spec: HamiltonianSpec, u: GridFunction, c: float,
                  schedule: Optional[Sequence[Tuple[float, float]]] = None
                  ) -> List[float]:
    """Sup distances |T_s(backward_t(u)) - u| along a shrinking (t, s)
    schedule; decay toward zero exhibits density of smooth
    sub-solutions next to u."""
    if schedule is None:
        schedule = DEFAULT_SCHEDULE
    rep_in = subsolution_report(spec, u, c)
    if not rep_in.passed:
        raise PreconditionError(
            "input is not a sub-solution at level "
            f"{c:.6g} (max residual {rep_in.max_residual:.3g})")
    dists = []
    for t, s in schedule:
        res = lasry_lions(spec, u, t, s, c, check_input=False)
        if not res.report.passed:
            warnings.warn(
                f"smoothed iterate at (t={t:.4g}, s={s:.4g}) missed the "
                f"sub-solution check ({res.report.max_residual:.3g})",
                WeakKAMWarning, stacklevel=2)
        dists.append(res.sup_dist_to_input)
    return dists
