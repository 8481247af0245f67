"""Hamiltonian flow, Lagrangian graph transport, and graph-break detection.

Built-in families are separable after shifting momentum by the linear
term, so a Störmer-Verlet leapfrog keeps energy drift bounded over the
times used here; custom Hamiltonians fall back to classical RK4 on the
finite-difference vector field.  Graphs over the circle are transported
pointwise from the nodes; loss of the graph property is detected as a
failure of strict monotonicity of the transported positions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError, GraphBreakError, IntegratorError, \
    PreconditionError, WeakKAMWarning
from .hamiltonian import HamiltonianSpec, eval_h, vector_field, _dh_dp
from .laxoleinik import GridFunction, evolve
from .regularize import _fit_steps
from .semiconcave import c11_test, regularity_profile

# leapfrog energy-drift budget per unit time at the reference step
ENERGY_TOL = 1e-6
REFERENCE_DT = 1e-3
MAX_DT = 1e-2

# transported positions closer than this count as a fold
TIE_TOL = 1e-9


@dataclass(frozen=True)
class FlowState:
    """Point of the flow: position on the circle, its winding count,
    momentum, and elapsed time."""

    x: float
    winding: int
    p: float
    t: float

    @property
    def lift(self) -> float:
        return self.winding + self.x


@dataclass(frozen=True)
class Trajectory:
    """Sampled flow history: ts (m+1,), lifted positions and momenta of
    shape (m+1,) for a single start or (m+1, k) for a batch."""

    ts: np.ndarray
    xs: np.ndarray
    ps: np.ndarray

    @property
    def batch(self) -> bool:
        return self.xs.ndim == 2

    def states(self) -> List[FlowState]:
        if self.batch:
            raise ConfigError("states() is for single trajectories; "
                              "index the arrays for batches")
        out = []
        for t, xl, p in zip(self.ts, self.xs, self.ps):
            w = int(np.floor(xl))
            out.append(FlowState(x=float(xl - w), winding=w, p=float(p),
                                 t=float(t)))
        return out

    @property
    def final(self):
        return self.states()[-1] if not self.batch \
            else (self.xs[-1], self.ps[-1])


def _force(spec: HamiltonianSpec, x: np.ndarray) -> np.ndarray:
    # -dU/dx for the shifted-kinetic form H = (1/2) q^2 + U(x)
    if spec.kind == "tilted_pendulum":
        return np.pi * np.sin(2.0 * np.pi * x)
    dv = spec.d_potential
    if dv is not None:
        return -np.asarray(dv(np.mod(x, 1.0)), dtype=float)
    # fall back to a central difference of the potential
    d = 1e-6
    xm = np.mod(x, 1.0)
    vp = np.asarray(spec.potential(np.mod(xm + d, 1.0)), dtype=float)
    vm = np.asarray(spec.potential(np.mod(xm - d, 1.0)), dtype=float)
    return -(vp - vm) / (2.0 * d)


def integrate(spec: HamiltonianSpec, x0, p0, t: float,
              dt: float = REFERENCE_DT) -> Trajectory:
    """Flow (x0, p0) for time t (either sign), sampling every step.

    x0, p0 may be scalars or equal-length arrays.  Built-in families use
    leapfrog in the shifted momentum; custom specs use RK4.  Raises when
    the energy drift exceeds 100x the per-unit-time budget.
    """
    if not (0.0 < dt <= MAX_DT):
        raise ConfigError(f"need 0 < dt <= {MAX_DT}, got {dt}")
    scalar = np.ndim(x0) == 0 and np.ndim(p0) == 0
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    p = np.atleast_1d(np.asarray(p0, dtype=float)).copy()
    if x.shape != p.shape:
        raise ConfigError("x0 and p0 must have matching shapes")
    m = max(1, int(round(abs(t) / dt)))
    step = t / m
    xs = np.empty((m + 1,) + x.shape)
    ps = np.empty((m + 1,) + x.shape)
    xs[0], ps[0] = x, p
    e0 = eval_h(spec, np.mod(x, 1.0), p)
    if spec.kind in ("mechanical", "tilted_pendulum"):
        shift = spec.P if spec.kind == "tilted_pendulum" else 0.0
        q = p + shift
        f = _force(spec, x)
        for k in range(m):
            q_half = q + 0.5 * step * f
            x = x + step * q_half
            f = _force(spec, x)
            q = q_half + 0.5 * step * f
            xs[k + 1], ps[k + 1] = x, q - shift
        p = q - shift
    else:
        for k in range(m):
            k1x, k1p = vector_field(spec, np.mod(x, 1.0), p)
            k2x, k2p = vector_field(spec, np.mod(x + 0.5 * step * k1x, 1.0),
                                    p + 0.5 * step * k1p)
            k3x, k3p = vector_field(spec, np.mod(x + 0.5 * step * k2x, 1.0),
                                    p + 0.5 * step * k2p)
            k4x, k4p = vector_field(spec, np.mod(x + step * k3x, 1.0),
                                    p + step * k3p)
            x = x + (step / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
            p = p + (step / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p)
            xs[k + 1], ps[k + 1] = x, p
    drift = float(np.max(np.abs(eval_h(spec, np.mod(x, 1.0), p) - e0)))
    budget = 100.0 * ENERGY_TOL * max(1.0, abs(t)) * (dt / REFERENCE_DT) ** 2
    if drift > budget:
        raise IntegratorError(
            f"energy drift {drift:.3g} exceeds budget {budget:.3g} "
            f"(t={t}, dt={dt})")
    ts = np.linspace(0.0, t, m + 1)
    if scalar:
        return Trajectory(ts=ts, xs=xs[:, 0], ps=ps[:, 0])
    return Trajectory(ts=ts, xs=xs, ps=ps)


@dataclass(frozen=True)
class TransportedGraph:
    """Image of a gradient graph under the flow for time s.

    samples[:, 0] are transported positions mod 1 in node order,
    samples[:, 1] the transported momenta; momenta holds the resampled
    GridFunction over the transported positions when is_graph.
    """

    samples: np.ndarray
    is_graph: bool
    s: float
    momenta: Optional[GridFunction]


def graph_transport(spec: HamiltonianSpec, f: GridFunction, s: float,
                    dt: float = REFERENCE_DT) -> TransportedGraph:
    """Flow every (x_i, Df(x_i)) for time s and test the graph property.

    The transported set is a graph when the lifted positions stay
    strictly increasing in node order and wind exactly once; momenta are
    then resampled at the nodes by monotone interpolation.
    """
    prof = regularity_profile(f)
    if not prof.stable:
        warnings.warn("graph_transport input has an unstable regularity "
                      "profile; transported momenta may be unreliable",
                      WeakKAMWarning, stacklevel=2)
    traj = integrate(spec, f.nodes, f.gradient(), s, dt)
    x_out, p_out = traj.final
    diffs = np.diff(x_out)
    wrap = x_out[0] + 1.0 - x_out[-1]
    is_graph = bool(np.all(diffs > TIE_TOL) and wrap > TIE_TOL)
    momenta = None
    if is_graph:
        base = x_out - x_out[0]
        xg = np.concatenate([base - 1.0, base, base + 1.0])
        pg = np.tile(p_out, 3)
        interp = PchipInterpolator(xg, pg)
        nodes_rel = np.mod(f.nodes - x_out[0], 1.0)
        momenta = GridFunction(f.n, np.asarray(interp(nodes_rel)))
    samples = np.column_stack([np.mod(x_out, 1.0), p_out])
    return TransportedGraph(samples=samples, is_graph=is_graph, s=s,
                            momenta=momenta)


def graph_break_time(spec: HamiltonianSpec, f: GridFunction, s_max: float,
                     dt: float = REFERENCE_DT) -> float:
    """First time in (0, s_max] at which the transported graph folds,
    located by bisection to 1e-3; returns s_max when no fold occurs."""
    if s_max <= 0.0:
        raise ConfigError(f"need s_max > 0, got {s_max}")
    if graph_transport(spec, f, s_max, dt).is_graph:
        return s_max
    lo, hi = 0.0, s_max
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if graph_transport(spec, f, mid, dt).is_graph:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def variational_consistency(spec: HamiltonianSpec, f: GridFunction,
                            s: float, c: float,
                            dt: float = REFERENCE_DT) -> float:
    """Max gap between the evolved function at transported positions and
    f plus the running action along the integrated characteristics.

    Assumes s below the graph-break time of f.
    """
    if s <= 0.0:
        raise ConfigError(f"need s > 0, got {s}")
    m, h = _fit_steps(s)
    tf = evolve(spec, f, s, h, c, direction="forward")
    traj = integrate(spec, f.nodes, f.gradient(), s, dt)
    xs_mod = np.mod(traj.xs, 1.0)
    vs = _dh_dp(spec, xs_mod, traj.ps)
    lagr = traj.ps * vs - eval_h(spec, xs_mod, traj.ps)
    integral = np.trapezoid(c + lagr, traj.ts, axis=0)
    lhs = tf(xs_mod[-1])
    rhs = f.values + integral
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class GraphIdentityResult:
    """Sup distances from the forward-transported backward graph and the
    backward-transported forward graph to the graph of Du."""

    forward_distance: float
    backward_distance: float


def _graph_distance(u: GridFunction, tg: TransportedGraph) -> float:
    # vertical sup distance from transported samples to the Du graph
    du = u.gradient()
    base = u.nodes
    xg = np.concatenate([base - 1.0, base, base + 1.0])
    dg = np.tile(du, 3)
    interp = PchipInterpolator(xg, dg)
    ref = interp(np.mod(tg.samples[:, 0], 1.0))
    return float(np.max(np.abs(tg.samples[:, 1] - ref)))


def graph_identity_check(spec: HamiltonianSpec, u: GridFunction, t: float,
                         c: float, dt: float = REFERENCE_DT
                         ) -> GraphIdentityResult:
    """Transport the graph of D(backward_t u) forward by t and the graph
    of D(forward_t u) backward by t; both should land on the graph of Du
    for small t when u is a C^{1,1} sub-solution.
    """
    flag, _, _ = c11_test(u)
    if not flag:
        raise PreconditionError("input failed the C^{1,1} grid test")
    if not (0.0 < t <= 0.1):
        raise ConfigError(f"need 0 < t <= 0.1, got {t}")
    m, h = _fit_steps(t)
    v = evolve(spec, u, t, h, c, direction="backward")
    fw = graph_transport(spec, v, t, dt)
    if not fw.is_graph:
        raise GraphBreakError(
            "forward-transported graph folded; t too large for this input")
    w = evolve(spec, u, t, h, c, direction="forward")
    bw = graph_transport(spec, w, -t, dt)
    if not bw.is_graph:
        raise GraphBreakError(
            "backward-transported graph folded; t too large for this input")
    return GraphIdentityResult(forward_distance=_graph_distance(u, fw),
                               backward_distance=_graph_distance(u, bw))
