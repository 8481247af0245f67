"""Ensemble sub-solutions and Aubry set estimation.

The pendulum family H(x, p) = (p + P)^2 / 2 - sin^2(pi x) pins the
expected geometry: inside the shear window the critical level is zero;
at the window edge P = 2 sqrt(2) / pi the unique critical solution is
smooth with gradient sqrt(2) sin(pi x) - P and the flagged set covers
the whole circle; at P = 0 the flagged set shrinks to a cluster around
the equilibrium x = 0 with vanishing momentum.
"""

import functools
import warnings

import numpy as np
import pytest

from weakkam import (EnsembleError, GridFunction, HamiltonianSpec,
                     PreconditionError, ResolutionError, aubry_points,
                     calibration_residual, critical_value,
                     ensemble_subsolution, equal_differential_check,
                     fixed_value_check, integrate, periodic_distance)

P_EDGE = 2.0 * np.sqrt(2.0) / np.pi


def make_free():
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return HamiltonianSpec.mechanical(zero, zero)


@functools.lru_cache(maxsize=1)
def pendulum_ensembles():
    spec = HamiltonianSpec.tilted_pendulum(0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")        # any member warning fails
        w0 = ensemble_subsolution(spec, 0.0, n_members=16, seed=0)
        w1 = ensemble_subsolution(spec, 0.0, n_members=16, seed=1)
    return spec, w0, w1


@functools.lru_cache(maxsize=1)
def edge_ensemble():
    spec = HamiltonianSpec.tilted_pendulum(P_EDGE)
    alpha = critical_value(spec, 512, 0.01).alpha
    w = ensemble_subsolution(spec, alpha, n_members=16, seed=0)
    return spec, alpha, w


@functools.lru_cache(maxsize=1)
def free_ensemble():
    spec = make_free()
    w = ensemble_subsolution(spec, 0.0, n_members=8, seed=0, n=128)
    return spec, w


def test_equilibrium_cluster_at_zero_tilt():
    spec, w0, _ = pendulum_ensembles()
    est = aubry_points(spec, w0, 0.0)
    assert est.alpha == 0.0
    assert est.points.size > 0
    # flags cluster around the equilibrium at x = 0
    assert np.max(periodic_distance(w0.nodes[est.points], 0.0)) <= 0.05
    # with near-zero momentum on the lift
    assert np.max(np.abs(est.lift[:, 1])) <= 0.05
    assert est.lift.shape == (est.points.size, 2)


def test_ensemble_is_seed_stable():
    spec, w0, w1 = pendulum_ensembles()
    est0 = aubry_points(spec, w0, 0.0)
    est1 = aubry_points(spec, w1, 0.0)
    sym = np.setdiff1d(est0.points, est1.points).size \
        + np.setdiff1d(est1.points, est0.points).size
    assert sym <= 2
    # the two averages share their differential on the flagged set
    assert equal_differential_check(w0, w1, est0) <= 0.05


def test_fixed_value_on_flagged_set():
    spec, w0, _ = pendulum_ensembles()
    est = aubry_points(spec, w0, 0.0)
    assert fixed_value_check(spec, w0, est, 0.1) <= 0.01
    assert fixed_value_check(spec, w0, est, 0.2) <= 0.01


def test_edge_solution_is_recovered():
    spec, alpha, w = edge_ensemble()
    assert abs(alpha) < 1e-6
    est = aubry_points(spec, w, alpha)
    # the flagged set covers the circle at the window edge
    assert est.points.size >= 0.95 * w.n
    # and the average matches the closed-form solution modulo constants
    u_true = np.sqrt(2.0) * (1.0 - np.cos(np.pi * w.nodes)) / np.pi \
        - P_EDGE * w.nodes
    d = w.values - u_true
    assert np.max(d) - np.min(d) <= 0.05
    du_true = np.sqrt(2.0) * np.sin(np.pi * w.nodes) - P_EDGE
    assert np.max(np.abs(w.gradient()[est.points]
                         - du_true[est.points])) <= 0.05


def test_edge_solution_is_calibrated_along_the_flow():
    spec, alpha, w = edge_ensemble()
    est = aubry_points(spec, w, alpha)
    pts = est.points
    i = pts[int(np.argmin(np.abs(w.nodes[pts] - 0.5)))]
    tr = integrate(spec, float(w.nodes[i]), float(w.gradient()[i]), 1.0)
    assert calibration_residual(spec, w, tr, alpha) <= 0.01
    assert fixed_value_check(spec, w, est, 0.1) <= 0.01


def test_free_particle_flags_everything():
    spec, w = free_ensemble()
    est = aubry_points(spec, w, 0.0)
    assert est.points.size == w.n
    assert np.ptp(w.values) <= 0.03
    assert np.max(np.abs(w.gradient())) <= 0.15


def test_ensemble_size_guard():
    with pytest.raises(EnsembleError):
        ensemble_subsolution(make_free(), 0.0, n_members=4, n=128)


def test_aubry_points_guards():
    spec, w = free_ensemble()
    steep = GridFunction.from_callable(
        lambda x: 0.5 * np.cos(2 * np.pi * x), 128)
    with pytest.raises(PreconditionError):
        aubry_points(spec, steep, 0.0)
    # a strictly supercritical level flags nothing
    with pytest.raises(ResolutionError):
        aubry_points(spec, GridFunction.zeros(128), 0.5)


def test_check_function_guards():
    spec, w0, w1 = pendulum_ensembles()
    est = aubry_points(spec, w0, 0.0)
    with pytest.raises(PreconditionError):
        equal_differential_check(w0, GridFunction.zeros(128), est)
    batch = integrate(spec, np.array([0.1, 0.2]), np.zeros(2), 0.5)
    with pytest.raises(PreconditionError):
        calibration_residual(spec, w0, batch, 0.0)
    with pytest.raises(PreconditionError):
        fixed_value_check(spec, w0, est, 0.7)
