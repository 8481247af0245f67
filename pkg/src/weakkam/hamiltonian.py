"""Tonelli Hamiltonians on the circle and their Legendre transforms.

The configuration space is the flat circle T = R/Z, so positions are
always reduced modulo 1 and the fiber variable p is a plain real number.
Three families are supported:

* ``mechanical``       H(x, p) = p^2 / 2 + V(x) for a periodic potential V,
* ``tilted_pendulum``  H(x, p) = (p + P)^2 / 2 - sin^2(pi x),
* ``custom``           closed-form evaluators supplied by the caller.

The Lagrangian is obtained by maximizing p*v - H(x, p) over the fiber:
closed forms for the built-in families, a golden-section search with a
Newton polish for custom Hamiltonians.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    ConfigError,
    EvaluationDomainError,
    SuperlinearityRadiusError,
)

DEFAULT_P_SEARCH_RADIUS = 8.0

# central-difference step for derivatives of custom Hamiltonians
FD_STEP = 1e-6

# golden-section iterations: shrinks a width-16 bracket below 1e-10
_GOLDEN_ITERS = 52
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class HamiltonianSpec:
    """An evaluatable Tonelli Hamiltonian H(x, p) on T x R.

    Use the class methods :meth:`mechanical`, :meth:`tilted_pendulum` and
    :meth:`custom` instead of the raw constructor.

    Attributes
    ----------
    kind: one of "mechanical", "tilted_pendulum", "custom".
    p_search_radius: bound for the numeric fiber maximization.  All
        velocities in play must satisfy dH/dp(x, -R) < v < dH/dp(x, R).
    """

    kind: str
    p_search_radius: float = DEFAULT_P_SEARCH_RADIUS
    potential: Optional[Callable] = None
    d_potential: Optional[Callable] = None
    P: float = 0.0
    h_func: Optional[Callable] = None
    dh_dx: Optional[Callable] = None
    dh_dp: Optional[Callable] = None
    d2h_dp2: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in ("mechanical", "tilted_pendulum", "custom"):
            raise ConfigError(f"unknown Hamiltonian kind {self.kind!r}")
        if self.p_search_radius <= 0:
            raise ConfigError("p_search_radius must be positive")
        if self.kind == "mechanical" and self.potential is None:
            raise ConfigError("mechanical spec needs a potential")
        if self.kind == "custom" and self.h_func is None:
            raise ConfigError("custom spec needs an H(x, p) evaluator")

    @classmethod
    def mechanical(cls, potential, d_potential=None,
                   p_search_radius=DEFAULT_P_SEARCH_RADIUS):
        """Kinetic-plus-potential Hamiltonian p^2/2 + V(x).

        ``potential`` must accept numpy arrays of positions in [0, 1).
        ``d_potential`` is optional; central differences are used when it
        is omitted.
        """
        return cls(kind="mechanical", potential=potential,
                   d_potential=d_potential, p_search_radius=p_search_radius)

    @classmethod
    def tilted_pendulum(cls, P, p_search_radius=DEFAULT_P_SEARCH_RADIUS):
        """The momentum-shifted pendulum (p + P)^2/2 - sin^2(pi x)."""
        return cls(kind="tilted_pendulum", P=float(P),
                   p_search_radius=p_search_radius)

    @classmethod
    def custom(cls, h_func, dh_dx=None, dh_dp=None, d2h_dp2=None,
               p_search_radius=DEFAULT_P_SEARCH_RADIUS):
        """Arbitrary Hamiltonian from closed-form evaluators.

        Missing derivatives fall back to central differences with step
        1e-6.  All callables must broadcast over numpy arrays.
        """
        return cls(kind="custom", h_func=h_func, dh_dx=dh_dx, dh_dp=dh_dp,
                   d2h_dp2=d2h_dp2, p_search_radius=p_search_radius)


@dataclass(frozen=True)
class LegendreResult:
    """Value and maximizer of the fiber Legendre transform.

    value = argmax_p * v - H(x, argmax_p), and dH/dp(x, argmax_p) = v up
    to the polish tolerance.
    """

    value: float
    argmax_p: float


@dataclass(frozen=True)
class TonelliReport:
    """Sampled convexity / superlinearity diagnostic (report only)."""

    min_hessian: float
    superlinearity_margin: float
    n_samples: int
    passed: bool


def eval_h(spec: HamiltonianSpec, x, p):
    """Evaluate H(x mod 1, p).  Broadcasts over array input."""
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    p = np.asarray(p, dtype=float)
    if spec.kind == "mechanical":
        out = 0.5 * p * p + spec.potential(x)
    elif spec.kind == "tilted_pendulum":
        q = p + spec.P
        s = np.sin(np.pi * x)
        out = 0.5 * q * q - s * s
    else:
        out = spec.h_func(x, p)
    out = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(out)):
        raise EvaluationDomainError(
            f"H evaluated to a non-finite value (kind={spec.kind})")
    return out if out.ndim else float(out)


def _dh_dp(spec, x, p):
    if spec.kind == "mechanical":
        return np.asarray(p, dtype=float)
    if spec.kind == "tilted_pendulum":
        return np.asarray(p, dtype=float) + spec.P
    if spec.dh_dp is not None:
        return np.asarray(spec.dh_dp(np.mod(x, 1.0), p), dtype=float)
    return (eval_h(spec, x, p + FD_STEP) - eval_h(spec, x, p - FD_STEP)) \
        / (2.0 * FD_STEP)


def _dh_dx(spec, x, p):
    if spec.kind == "mechanical":
        if spec.d_potential is not None:
            return np.asarray(spec.d_potential(np.mod(x, 1.0)), dtype=float)
        xm = np.mod(x, 1.0)
        return (spec.potential(np.mod(xm + FD_STEP, 1.0))
                - spec.potential(np.mod(xm - FD_STEP, 1.0))) / (2.0 * FD_STEP)
    if spec.kind == "tilted_pendulum":
        # d/dx [-sin^2(pi x)] = -pi sin(2 pi x)
        return -np.pi * np.sin(2.0 * np.pi * np.asarray(x, dtype=float))
    if spec.dh_dx is not None:
        return np.asarray(spec.dh_dx(np.mod(x, 1.0), p), dtype=float)
    return (eval_h(spec, x + FD_STEP, p) - eval_h(spec, x - FD_STEP, p)) \
        / (2.0 * FD_STEP)


def _d2h_dp2(spec, x, p):
    if spec.kind in ("mechanical", "tilted_pendulum"):
        return np.ones_like(np.asarray(p, dtype=float))
    if spec.d2h_dp2 is not None:
        return np.asarray(spec.d2h_dp2(np.mod(x, 1.0), p), dtype=float)
    d = 1e-4
    return (eval_h(spec, x, p + d) - 2.0 * eval_h(spec, x, p)
            + eval_h(spec, x, p - d)) / (d * d)


def vector_field(spec: HamiltonianSpec, x, p):
    """Hamiltonian vector field (dx/dt, dp/dt) = (dH/dp, -dH/dx)."""
    dx = _dh_dp(spec, x, p)
    dp = -_dh_dx(spec, x, p)
    if not (np.all(np.isfinite(dx)) and np.all(np.isfinite(dp))):
        raise EvaluationDomainError("non-finite Hamiltonian derivative")
    if np.ndim(dx) == 0 and np.ndim(dp) == 0:
        return float(dx), float(dp)
    return dx, dp


def _legendre_batch(spec: HamiltonianSpec, x, v, check_boundary=True):
    """Vectorized L(x, v) = max_p p*v - H(x, p) with its maximizer.

    Closed forms for the built-in families; golden-section search plus a
    Newton polish on the bracket [-R, R] for custom Hamiltonians.
    Returns (value, argmax_p) arrays broadcast to the common shape.
    """
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    v = np.asarray(v, dtype=float)
    shape = np.broadcast_shapes(x.shape, v.shape)
    if spec.kind == "mechanical":
        val = np.broadcast_to(0.5 * v * v - spec.potential(x), shape)
        return val.astype(float), np.broadcast_to(v, shape).astype(float)
    if spec.kind == "tilted_pendulum":
        s = np.sin(np.pi * x)
        val = np.broadcast_to(0.5 * v * v - spec.P * v + s * s, shape)
        return val.astype(float), \
            np.broadcast_to(v - spec.P, shape).astype(float)

    x = np.broadcast_to(x, shape)
    v = np.broadcast_to(v, shape)
    R = spec.p_search_radius
    a = np.full(shape, -R)
    b = np.full(shape, R)

    def g(p):
        return p * v - spec.h_func(x, p)

    # golden-section maximization (concave objective, Tonelli)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    for _ in range(_GOLDEN_ITERS):
        take_left = g(c) >= g(d)
        b = np.where(take_left, d, b)
        a = np.where(take_left, a, c)
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
    p = 0.5 * (a + b)

    # Newton polish on dH/dp(x, p) = v
    for _ in range(3):
        hess = _d2h_dp2(spec, x, p)
        step = (_dh_dp(spec, x, p) - v) / np.where(hess > 1e-12, hess, 1.0)
        p = np.clip(p - step, -R, R)

    if check_boundary and np.any(np.abs(p) > R - 1e-3):
        raise SuperlinearityRadiusError(
            "Legendre maximizer at the momentum search boundary; "
            "increase p_search_radius")
    return p * v - spec.h_func(x, p), p


def legendre(spec: HamiltonianSpec, x, v) -> LegendreResult:
    """Fiber Legendre transform L(x, v) at a single point."""
    val, p = _legendre_batch(spec, np.asarray(float(x)),
                             np.asarray(float(v)))
    return LegendreResult(value=float(val), argmax_p=float(p))


def check_tonelli(spec: HamiltonianSpec, n_samples: int = 64) -> TonelliReport:
    """Sampled positive-Hessian and superlinearity diagnostic.

    Samples a lattice on T x [-R, R], reports the minimal fiber Hessian
    and the superlinearity witness min_x [H(x, +/-R) - H(x, 0) - R].
    Passes when both are positive.
    """
    if n_samples < 16:
        raise ConfigError("check_tonelli needs n_samples >= 16")
    side = int(np.ceil(np.sqrt(n_samples)))
    R = spec.p_search_radius
    xs = np.arange(side) / side
    ps = np.linspace(-R, R, side)
    X, Pm = np.meshgrid(xs, ps, indexing="ij")
    if spec.kind in ("mechanical", "tilted_pendulum"):
        min_hess = 1.0
    else:
        min_hess = float(np.min(_d2h_dp2(spec, X, Pm)))
    h0 = eval_h(spec, xs, np.zeros_like(xs))
    margin = float(np.min(np.minimum(eval_h(spec, xs, np.full_like(xs, R)),
                                     eval_h(spec, xs, np.full_like(xs, -R)))
                          - h0 - R))
    return TonelliReport(min_hessian=min_hess,
                         superlinearity_margin=margin,
                         n_samples=side * side,
                         passed=(min_hess > 0.0 and margin > 0.0))
