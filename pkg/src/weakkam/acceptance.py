"""Self-contained acceptance suite: fourteen numbered criteria.

Each criterion is a function returning a CriterionResult with the
measured quantities in its detail string.  Oracles (quadrature-bisection
critical value, brute-force Hopf-Lax) are implemented here from first
principles so the library is checked against independent arithmetic.
Expensive fixtures are cached and shared between criteria.

tol_scale multiplies every tolerance; 1.0 is the contractual setting.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .aubry import AubryEstimate, aubry_points, calibration_residual, \
    ensemble_subsolution
from .errors import ConfigError
from .flow import graph_break_time, graph_identity_check, integrate
from .hamiltonian import HamiltonianSpec, eval_h, legendre
from .laxoleinik import GridFunction, critical_value, evolve
from .regularize import RegularizationResult, lasry_lions, small_s_search
from .semiconcave import c11_test, regularity_profile
from .action import periodic_distance

P_EDGE = 2.0 / np.pi

CRITERION_NAMES = {
    1: "mechanical-critical-value",
    2: "pendulum-zero-window",
    3: "pendulum-oracle-match",
    4: "critical-solution-profile",
    5: "hopf-lax-oracle",
    6: "regularity-split",
    7: "subsolution-preservation",
    8: "density-sweep",
    9: "aubry-detection",
    10: "lift-invariance-energy",
    11: "calibration",
    12: "graph-identity",
    13: "graph-break-scaling",
    14: "property-suite",
}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    runtime: float

    @property
    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} [{self.name}]: {flag} "
                f"({self.runtime:.1f}s) {self.detail}")


# ---------------------------------------------------------------------------
# oracles


def pendulum_alpha_oracle(P: float) -> float:
    """Critical value of H(x,p) = (p+P)^2/2 - sin^2(pi x) by quadrature
    and bisection, independent of the grid code.

    A level c admits a periodic sub-solution iff the admissible gradient
    band around -P can average to zero, i.e. the full swing
    int_0^1 sqrt(2(c + sin^2(pi x))) dx reaches |P|; the critical c
    makes it exact.
    """

    def swing(c):
        val, _ = quad(lambda x: np.sqrt(2.0 * (c + np.sin(np.pi * x) ** 2)),
                      0.0, 1.0, limit=200)
        return val

    if abs(P) <= swing(0.0):
        return 0.0
    return brentq(lambda c: swing(c) - abs(P), 0.0, 2.0 * P * P + 2.0,
                  xtol=1e-12)


def hopf_lax_oracle(u0: Callable, t: float, xs: np.ndarray,
                    m: int = 8192) -> np.ndarray:
    """Brute-force free-particle min-convolution on a fine lattice."""
    y = np.arange(m) / m
    vals = np.asarray(u0(y), dtype=float)
    out = np.empty_like(xs)
    for i, x in enumerate(xs):
        best = np.inf
        for k in (-1.0, 0.0, 1.0):
            d = x - (y + k)
            best = min(best, float(np.min(vals + d * d / (2.0 * t))))
        out[i] = best
    return out


# ---------------------------------------------------------------------------
# shared fixtures


def _mech_sin2() -> HamiltonianSpec:
    return HamiltonianSpec.mechanical(
        lambda x: -np.sin(np.pi * x) ** 2,
        lambda x: -np.pi * np.sin(2.0 * np.pi * x))


@lru_cache(maxsize=None)
def _cv_pendulum(P: float):
    return critical_value(HamiltonianSpec.tilted_pendulum(P))


@lru_cache(maxsize=None)
def _cv_mechanical():
    return critical_value(_mech_sin2())


def _claimed_edge_solution(x: np.ndarray) -> np.ndarray:
    # closed-form candidate pinned by the acceptance contract at P=2/pi
    return (1.0 - np.cos(np.pi * x)) / np.pi - 2.0 * x / np.pi


@lru_cache(maxsize=None)
def _edge_solution() -> Tuple[GridFunction, RegularizationResult, float]:
    # converge the descending semigroup at the edge parameter, then
    # smooth two-sidedly; this is the suite's regularized critical
    # sub-solution at P=2/pi
    alpha = _cv_pendulum(P_EDGE).alpha
    spec = HamiltonianSpec.tilted_pendulum(P_EDGE)
    u = evolve(spec, GridFunction.zeros(512), 4.0, 0.01, alpha)
    u = GridFunction(512, u.values - u.mean())
    reg = lasry_lions(spec, u, 0.05, 0.025, alpha, check_input=False)
    return u, reg, alpha


@lru_cache(maxsize=None)
def _free_particle() -> HamiltonianSpec:
    return HamiltonianSpec.mechanical(
        lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        lambda x: np.zeros_like(np.asarray(x, dtype=float)))


@lru_cache(maxsize=None)
def _kink_fixture():
    # kinked sub-solution for the free particle at level 0.6
    spec = _free_particle()
    c = 0.6

    def dist(x):
        return periodic_distance(np.asarray(x, dtype=float), 0.5)

    u256 = GridFunction.from_callable(dist, 256)
    u512 = GridFunction.from_callable(dist, 512)
    k256 = regularity_profile(
        evolve(spec, u256, 0.2, 0.01, c, direction="backward")).k_plus
    k512 = regularity_profile(
        evolve(spec, u512, 0.2, 0.01, c, direction="backward")).k_plus
    w = small_s_search(spec, u512, 0.2, c)
    return spec, c, u512, k256, k512, w


@lru_cache(maxsize=None)
def _aubry_fixture(P: float):
    alpha = _cv_pendulum(P).alpha
    spec = HamiltonianSpec.tilted_pendulum(P)
    wbar = ensemble_subsolution(spec, alpha, seed=0)
    est = aubry_points(spec, wbar, alpha)
    return spec, alpha, wbar, est


@lru_cache(maxsize=None)
def _density_curve() -> Tuple[float, ...]:
    from .regularize import density_sweep
    spec, c, u512, _, _, _ = _kink_fixture()
    return tuple(density_sweep(spec, u512, c))


def _regularization_registry() -> List[Tuple[str, float,
                                             RegularizationResult]]:
    spec, c, u512, _, _, w = _kink_fixture()
    _, reg_edge, alpha = _edge_solution()
    coarse = lasry_lions(spec, u512, 0.5, 0.25, c)
    fine = lasry_lions(spec, u512, 1.0 / 64, 1.0 / 128, c)
    return [
        ("edge-solution", alpha, reg_edge),
        ("kink-search", c, w),
        ("kink-coarse", c, coarse),
        ("kink-fine", c, fine),
    ]


# ---------------------------------------------------------------------------
# criteria


def criterion_1(tol_scale: float = 1.0) -> CriterionResult:
    """Mechanical critical value for V = -sin^2(pi x) sits at 0."""
    t0 = time.perf_counter()
    res = _cv_mechanical()
    tol = 0.01 * tol_scale
    ok = bool(res.converged and -tol <= res.alpha <= tol)
    detail = f"alpha_est={res.alpha:.3e}, window +/-{tol:g}"
    return CriterionResult(1, CRITERION_NAMES[1], ok, detail,
                           time.perf_counter() - t0)


def criterion_2(tol_scale: float = 1.0) -> CriterionResult:
    """Pendulum critical value vanishes for P in {0, 0.3, 0.6}."""
    t0 = time.perf_counter()
    tol = 0.01 * tol_scale
    vals = {P: _cv_pendulum(P).alpha for P in (0.0, 0.3, 0.6)}
    ok = all(abs(a) <= tol for a in vals.values()) and \
        all(_cv_pendulum(P).converged for P in vals)
    detail = ", ".join(f"alpha({P:g})={a:.2e}" for P, a in vals.items())
    return CriterionResult(2, CRITERION_NAMES[2], ok, detail,
                           time.perf_counter() - t0)


def criterion_3(tol_scale: float = 1.0) -> CriterionResult:
    """Pendulum critical value at P=1 matches the quadrature oracle."""
    t0 = time.perf_counter()
    res = _cv_pendulum(1.0)
    oracle = pendulum_alpha_oracle(1.0)
    gap = abs(res.alpha - oracle)
    ok = bool(res.converged and gap <= 0.01 * tol_scale)
    detail = (f"alpha_est={res.alpha:.6f}, oracle={oracle:.6f}, "
              f"gap={gap:.2e}")
    return CriterionResult(3, CRITERION_NAMES[3], ok, detail,
                           time.perf_counter() - t0)


def criterion_4(tol_scale: float = 1.0) -> CriterionResult:
    """Regularized critical sub-solution at P=2/pi versus the pinned
    closed form: sup distance (mod constant), a second-difference jump
    of at least pi across x=0, and the curvature cap pi/2 + 10%
    elsewhere."""
    t0 = time.perf_counter()
    _, reg, _ = _edge_solution()
    w = reg.w
    x = w.nodes
    target = _claimed_edge_solution(x)
    sup = float(np.max(np.abs((w.values - w.mean())
                              - (target - target.mean()))))
    d2 = w.second_differences()
    jump = abs(float(d2[1]) - float(d2[-1]))
    away = np.abs(d2[2:-1]) / 2.0
    cap = float(np.max(away))
    ok_sup = sup <= 0.05 * tol_scale
    ok_jump = jump >= np.pi / tol_scale
    ok_cap = cap <= (np.pi / 2.0) * 1.1 * tol_scale
    ok = bool(ok_sup and ok_jump and ok_cap)
    detail = (f"sup={sup:.4f} (<=0.05: {ok_sup}), "
              f"jump@0={jump:.3f} (>=pi: {ok_jump}), "
              f"max|D2|/2 elsewhere={cap:.3f} (<=1.728: {ok_cap})")
    return CriterionResult(4, CRITERION_NAMES[4], ok, detail,
                           time.perf_counter() - t0)


def criterion_5(tol_scale: float = 1.0) -> CriterionResult:
    """Free-particle forward step against brute-force Hopf-Lax."""
    t0 = time.perf_counter()
    spec = _free_particle()

    def u0(x):
        return periodic_distance(np.asarray(x, dtype=float), 0.5) ** 2

    u = GridFunction.from_callable(u0, 512)
    out = evolve(spec, u, 0.5, 0.01, 0.0)
    oracle = hopf_lax_oracle(u0, 0.5, u.nodes)
    sup = float(np.max(np.abs(out.values - oracle)))
    ok = sup <= 2e-3 * tol_scale
    detail = f"sup error vs oracle = {sup:.2e} (<= 2e-3)"
    return CriterionResult(5, CRITERION_NAMES[5], ok, detail,
                           time.perf_counter() - t0)


def criterion_6(tol_scale: float = 1.0) -> CriterionResult:
    """One-sided smoothing alone has a grid-divergent semi-concavity
    constant; the two-sided composition is stable and C^{1,1}."""
    t0 = time.perf_counter()
    _, _, _, k256, k512, w = _kink_fixture()
    ratio = k512 / max(k256, 1e-12)
    grows = ratio >= 1.5 / tol_scale
    ok_c11, kp, km = c11_test(w.w)
    ok = bool(grows and w.stable and ok_c11)
    detail = (f"k_plus 256->512 ratio={ratio:.2f} (>=1.5: {grows}), "
              f"w stable={w.stable}, c11={ok_c11} "
              f"(k+={kp:.2f}, k-={km:.2f}, s={w.s_used:g})")
    return CriterionResult(6, CRITERION_NAMES[6], ok, detail,
                           time.perf_counter() - t0)


def criterion_7(tol_scale: float = 1.0) -> CriterionResult:
    """Every regularization result in the suite keeps the sub-solution
    property at its level."""
    t0 = time.perf_counter()
    rows = []
    ok = True
    for label, c, res in _regularization_registry():
        rep = res.report
        tol = 0.01 * (1.0 + abs(c)) * tol_scale
        good = bool(rep.passed and rep.max_residual <= tol)
        ok = ok and good
        rows.append(f"{label}: max_res={rep.max_residual:.2e} ({good})")
    detail = "; ".join(rows)
    return CriterionResult(7, CRITERION_NAMES[7], ok, detail,
                           time.perf_counter() - t0)


def criterion_8(tol_scale: float = 1.0) -> CriterionResult:
    """Density schedule: sup distances non-increasing after the second
    entry and ending at or below 0.01."""
    t0 = time.perf_counter()
    dists = _density_curve()
    tail = np.asarray(dists[1:])
    monotone = bool(np.all(np.diff(tail) <= 1e-12))
    small = dists[-1] <= 0.01 * tol_scale
    ok = monotone and small
    detail = ("[" + ", ".join(f"{d:.4f}" for d in dists) + "], "
              f"monotone={monotone}, final<=0.01: {small}")
    return CriterionResult(8, CRITERION_NAMES[8], ok, detail,
                           time.perf_counter() - t0)


def criterion_9(tol_scale: float = 1.0) -> CriterionResult:
    """Aubry detection: a tight momentum-zero cluster at x=0 for P=0,
    and at P=2/pi the contractual full-circle graph at sin(pi x)-2/pi."""
    t0 = time.perf_counter()
    _, _, w0, est0 = _aubry_fixture(0.0)
    pos = w0.nodes[est0.points]
    dist0 = float(np.max(np.minimum(pos, 1.0 - pos)))
    mom0 = float(np.max(np.abs(est0.lift[:, 1])))
    ok_p0 = dist0 <= 0.05 * tol_scale and mom0 <= 0.05 * tol_scale

    _, _, wc, estc = _aubry_fixture(P_EDGE)
    coverage = len(estc.points) / wc.n
    claimed = np.sin(np.pi * estc.lift[:, 0]) - P_EDGE
    dev = float(np.max(np.abs(estc.lift[:, 1] - claimed)))
    ok_pc = coverage >= 0.95 / tol_scale and dev <= 0.05 * tol_scale

    ok = bool(ok_p0 and ok_pc)
    detail = (f"P=0: cluster={dist0:.4f}, |p|={mom0:.4f} ({ok_p0}); "
              f"P=2/pi: coverage={100 * coverage:.1f}%, "
              f"lift dev={dev:.4f} ({ok_pc})")
    return CriterionResult(9, CRITERION_NAMES[9], ok, detail,
                           time.perf_counter() - t0)


def _lift_flow_gap(spec: HamiltonianSpec, est: AubryEstimate,
                   t: float) -> float:
    # distance from each flowed lift point to the lift point set,
    # Euclidean in (circle distance, momentum gap)
    lx, lp = est.lift[:, 0], est.lift[:, 1]
    traj = integrate(spec, lx, lp, t, 1e-3)
    xe = np.mod(traj.xs[-1], 1.0)
    pe = traj.ps[-1]
    dx = np.abs(xe[:, None] - lx[None, :])
    dx = np.minimum(dx, 1.0 - dx)
    dp = pe[:, None] - lp[None, :]
    return float(np.max(np.min(np.hypot(dx, dp), axis=1)))


def criterion_10(tol_scale: float = 1.0) -> CriterionResult:
    """Flow invariance of the estimated lifts over t = +/-0.5 and the
    energy level along them."""
    t0 = time.perf_counter()
    worst_gap = 0.0
    worst_energy = 0.0
    rows = []
    for P in (0.0, P_EDGE):
        spec, alpha, _, est = _aubry_fixture(P)
        gap = max(_lift_flow_gap(spec, est, 0.5),
                  _lift_flow_gap(spec, est, -0.5))
        energy = float(np.max(np.abs(
            eval_h(spec, est.lift[:, 0], est.lift[:, 1]) - alpha)))
        worst_gap = max(worst_gap, gap)
        worst_energy = max(worst_energy, energy)
        rows.append(f"P={P:.3g}: flow gap={gap:.4f}, "
                    f"|H-alpha|={energy:.4f}")
    ok = bool(worst_gap <= 0.02 * tol_scale
              and worst_energy <= 0.03 * tol_scale)
    detail = "; ".join(rows) + " (gap<=0.02, energy<=0.03)"
    return CriterionResult(10, CRITERION_NAMES[10], ok, detail,
                           time.perf_counter() - t0)


def criterion_11(tol_scale: float = 1.0) -> CriterionResult:
    """Calibration along the flow started on the P=2/pi lift at x=0.5
    over one time unit."""
    t0 = time.perf_counter()
    spec, alpha, wbar, _ = _aubry_fixture(P_EDGE)
    du = wbar.gradient()
    i = int(np.argmin(np.abs(wbar.nodes - 0.5)))
    traj = integrate(spec, float(wbar.nodes[i]), float(du[i]), 1.0, 1e-3)
    res = calibration_residual(spec, wbar, traj, alpha)
    ok = res <= 0.01 * tol_scale
    detail = f"residual={res:.4f} (<= 0.01)"
    return CriterionResult(11, CRITERION_NAMES[11], ok, detail,
                           time.perf_counter() - t0)


def criterion_12(tol_scale: float = 1.0) -> CriterionResult:
    """Graph identity: the smoothed edge solution's graph returns to
    itself under convexify-then-flow, in both directions."""
    t0 = time.perf_counter()
    _, reg, alpha = _edge_solution()
    spec = HamiltonianSpec.tilted_pendulum(P_EDGE)
    # the backward leg transports the forward iterate, whose kink has
    # re-sharpened; its advisory about the input profile is expected
    # here, while window warnings must still surface
    with warnings.catch_warnings():
        warnings.filterwarnings(
            "ignore", message="graph_transport input has an unstable")
        res = graph_identity_check(spec, reg.w, 0.05, alpha)
    worst = max(res.forward_distance, res.backward_distance)
    ok = worst <= 0.05 * tol_scale
    detail = (f"forward={res.forward_distance:.4f}, "
              f"backward={res.backward_distance:.4f} (<= 0.05)")
    return CriterionResult(12, CRITERION_NAMES[12], ok, detail,
                           time.perf_counter() - t0)


def criterion_13(tol_scale: float = 1.0) -> CriterionResult:
    """Graph-break time of the cosine seed scales inversely with its
    amplitude and matches the closed form."""
    t0 = time.perf_counter()
    spec = _free_particle()

    def seed(eps):
        return GridFunction.from_callable(
            lambda x: eps * np.cos(2.0 * np.pi * x) / (2.0 * np.pi), 512)

    s05 = graph_break_time(spec, seed(0.05), 5.0)
    s10 = graph_break_time(spec, seed(0.10), 5.0)
    ratio = s05 / s10
    closed = 1.0 / (2.0 * np.pi * 0.05)
    ok = bool(abs(ratio - 2.0) <= 0.1 * tol_scale
              and abs(s05 - closed) <= 0.02 * tol_scale)
    detail = (f"s0(0.05)={s05:.4f} vs closed {closed:.4f}, "
              f"ratio={ratio:.4f} (2 +/- 5%)")
    return CriterionResult(13, CRITERION_NAMES[13], ok, detail,
                           time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# property suite (criterion 14)


def _random_property_spec(rng: np.random.Generator) -> HamiltonianSpec:
    if rng.random() < 0.5:
        return HamiltonianSpec.tilted_pendulum(float(rng.uniform(-1, 1)))
    a1 = float(rng.uniform(-0.5, 0.5))
    a2 = float(rng.uniform(-0.25, 0.25))

    def pot(x):
        x = np.asarray(x, dtype=float)
        return a1 * np.cos(2 * np.pi * x) + a2 * np.cos(4 * np.pi * x)

    def dpot(x):
        x = np.asarray(x, dtype=float)
        return (-2 * np.pi * a1 * np.sin(2 * np.pi * x)
                - 4 * np.pi * a2 * np.sin(4 * np.pi * x))

    return HamiltonianSpec.mechanical(pot, dpot)


def _random_property_grid(rng: np.random.Generator,
                          n: int = 128) -> GridFunction:
    x = np.arange(n) / n
    vals = np.zeros(n)
    slope = np.zeros(n)
    for k in range(1, 5):
        a, b = rng.normal(), rng.normal()
        vals += (a * np.cos(2 * np.pi * k * x)
                 + b * np.sin(2 * np.pi * k * x)) / k ** 2
        slope += (2 * np.pi / k) * (b * np.cos(2 * np.pi * k * x)
                                    - a * np.sin(2 * np.pi * k * x))
    vals *= 0.2
    # cap the seed slope well inside the transition-velocity window so
    # a window-boundary argmin stays an anomaly signal, not noise
    steep = 0.2 * float(np.max(np.abs(slope)))
    if steep > 3.0:
        vals *= 3.0 / steep
    return GridFunction(n, vals)


def criterion_14(tol_scale: float = 1.0) -> CriterionResult:
    """Randomized structural properties of the semigroup, the Legendre
    transform, and the integrator (100 cases, fixed seed)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    h = 0.01
    worst: Dict[str, float] = {
        "composition": 0.0, "order": 0.0, "nonexpansive": 0.0,
        "shift": 0.0, "fenchel": 0.0, "reversible": 0.0,
    }
    for _ in range(100):
        spec = _random_property_spec(rng)
        u = _random_property_grid(rng)
        v = _random_property_grid(rng)
        c = float(rng.uniform(-0.2, 0.8))
        m1 = int(rng.integers(1, 4))
        m2 = int(rng.integers(1, 4))

        both = evolve(spec, u, (m1 + m2) * h, h, c)
        split = evolve(spec, evolve(spec, u, m1 * h, h, c), m2 * h, h, c)
        worst["composition"] = max(worst["composition"], float(
            np.max(np.abs(both.values - split.values))))

        upper = GridFunction(u.n, u.values + np.abs(v.values))
        tu = evolve(spec, u, m1 * h, h, c)
        tupper = evolve(spec, upper, m1 * h, h, c)
        worst["order"] = max(worst["order"], float(
            np.max(tu.values - tupper.values)))

        tv = evolve(spec, v, m1 * h, h, c)
        lhs = float(np.max(np.abs(tu.values - tv.values)))
        rhs = float(np.max(np.abs(u.values - v.values)))
        worst["nonexpansive"] = max(worst["nonexpansive"], lhs - rhs)

        K = float(rng.uniform(-5, 5))
        shifted = evolve(spec, GridFunction(u.n, u.values + K),
                         m1 * h, h, c)
        worst["shift"] = max(worst["shift"], float(
            np.max(np.abs(shifted.values - (tu.values + K))))
            / (1.0 + abs(K)))

        x0 = float(rng.random())
        v0 = float(rng.uniform(-2, 2))
        leg = legendre(spec, x0, v0)
        fen = abs(leg.value + eval_h(spec, x0, leg.argmax_p)
                  - leg.argmax_p * v0)
        worst["fenchel"] = max(worst["fenchel"], float(fen))

        p0 = float(rng.uniform(-2, 2))
        fwd = integrate(spec, x0, p0, 0.3, 1e-3).final
        back = integrate(spec, fwd.lift, fwd.p, -0.3, 1e-3).final
        rev = max(abs(back.lift - x0), abs(back.p - p0))
        worst["reversible"] = max(worst["reversible"], rev)

    # non-expansiveness compares iterates whose creases sit in different
    # cells; a crease interior to a cell is read low by O(h * slope
    # jump), so the discrete defect is grid-scale, not exact
    bounds = {
        "composition": 1e-12, "order": 1e-5, "nonexpansive": 1e-3,
        "shift": 1e-12, "fenchel": 1e-8, "reversible": 1e-6,
    }
    ok = all(worst[k] <= bounds[k] * tol_scale for k in bounds)
    detail = ", ".join(f"{k}={worst[k]:.1e} (<= {bounds[k]:g})"
                       for k in bounds)
    return CriterionResult(14, CRITERION_NAMES[14], ok, detail,
                           time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# runners

_CRITERIA: Dict[int, Callable[[float], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
    13: criterion_13, 14: criterion_14,
}


def run_criterion(number: int, tol_scale: float = 1.0) -> CriterionResult:
    if number not in _CRITERIA:
        raise ConfigError(f"no criterion {number}; valid: 1..14")
    if tol_scale <= 0.0:
        raise ConfigError("tol_scale must be positive")
    return _CRITERIA[number](tol_scale)


def run_all(numbers: Optional[Sequence[int]] = None,
            tol_scale: float = 1.0) -> List[CriterionResult]:
    if numbers is None:
        numbers = sorted(_CRITERIA)
    return [run_criterion(k, tol_scale) for k in numbers]
