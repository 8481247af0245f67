"""Semigroup steps, evolution, sub-solution reports, critical value."""

import functools

import numpy as np
import pytest

from weakkam import (ConfigError, GridFunction, HamiltonianSpec,
                     critical_value, eval_h, evolve, forward_step,
                     backward_step, subsolution_report)

import oracles


def make_free():
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return HamiltonianSpec.mechanical(zero, zero)


def trig_seed(n=128):
    return GridFunction.from_callable(
        lambda x: 0.2 * np.cos(2 * np.pi * x) + 0.1 * np.sin(4 * np.pi * x),
        n)


def test_grid_function_validation():
    with pytest.raises(ConfigError):
        GridFunction(100, np.zeros(100))       # not a power of two
    with pytest.raises(ConfigError):
        GridFunction(32, np.zeros(32))         # too coarse
    with pytest.raises(ConfigError):
        GridFunction(128, np.zeros(64))        # wrong length
    with pytest.raises(ConfigError):
        GridFunction(128, np.full(128, np.inf))


def test_grid_function_interpolation_and_calculus():
    u = GridFunction.from_callable(lambda x: np.cos(2 * np.pi * x), 512)
    xs = np.linspace(0, 2, 301)                # wraps past one period
    assert np.max(np.abs(u(xs) - np.cos(2 * np.pi * xs))) < 1e-3
    assert np.max(np.abs(u.gradient()
                         + 2 * np.pi * np.sin(2 * np.pi * u.nodes))) < 1e-3
    d2 = u.second_differences()
    assert np.max(np.abs(d2 + 4 * np.pi ** 2
                         * np.cos(2 * np.pi * u.nodes))) < 1e-2
    assert u.downsample().n == 256
    assert np.max(np.abs(u.downsample().values - u.values[::2])) == 0.0


def test_forward_step_matches_brute_minimization():
    h_free = lambda x, p: 0.5 * np.asarray(p) ** 2 \
        + np.zeros_like(np.asarray(x, dtype=float))
    h_pend = lambda x, p: 0.5 * np.asarray(p) ** 2 \
        - np.sin(np.pi * np.asarray(x)) ** 2
    u = trig_seed()
    for spec, h_of in [(make_free(), h_free),
                       (HamiltonianSpec.tilted_pendulum(0.0), h_pend)]:
        got = forward_step(spec, u, 0.01, 0.3).values
        want = oracles.brute_lax_step(h_of, u, u.n, 0.01, 0.3)
        assert np.max(np.abs(got - want)) < 1e-6


def test_backward_step_matches_brute_maximization():
    h_pend = lambda x, p: 0.5 * np.asarray(p) ** 2 \
        - np.sin(np.pi * np.asarray(x)) ** 2
    u = trig_seed()
    got = backward_step(HamiltonianSpec.tilted_pendulum(0.0),
                        u, 0.01, 0.3).values
    want = oracles.brute_lax_step(h_pend, u, u.n, 0.01, 0.3, reverse=True)
    assert np.max(np.abs(got - want)) < 2e-4


def test_evolve_free_matches_hopf_lax():
    # slopes stay inside the velocity window, so no boundary clipping
    u0 = lambda x: 0.5 * np.cos(2 * np.pi * x) + 0.15 * np.sin(4 * np.pi * x)
    u = GridFunction.from_callable(u0, 512)
    got = evolve(make_free(), u, 0.25, 0.01, 0.0).values
    want = oracles.hopf_lax_free(u0, 0.25, u.nodes)
    assert np.max(np.abs(got - want)) < 2e-3


def test_evolve_step_fitting_guard():
    u = trig_seed()
    with pytest.raises(ConfigError):
        evolve(make_free(), u, 0.05, 0.02, 0.0)   # t not a multiple of h
    with pytest.raises(ConfigError):
        evolve(make_free(), u, 0.1, 0.01, 0.0, direction="sideways")
    assert evolve(make_free(), u, 0.0, 0.01, 0.0) is u


def test_subsolution_report_level_sensitivity():
    spec = HamiltonianSpec.tilted_pendulum(0.0)
    zero = GridFunction.zeros(128)
    # H(x, 0) = -sin^2(pi x) <= 0, so the zero function passes at level 0
    rep = subsolution_report(spec, zero, 0.0)
    assert rep.passed
    assert rep.max_residual <= 1e-12
    assert rep.action_margin <= rep.tol
    # and fails at a level below the minimum of H
    rep_low = subsolution_report(spec, zero, -0.5)
    assert not rep_low.passed
    assert rep_low.max_residual == pytest.approx(0.5, abs=1e-12)
    # the worst node sits where sin^2 vanishes
    assert rep_low.worst_node in (0, 64)


def test_subsolution_report_flags_steep_functions():
    spec = make_free()
    steep = GridFunction.from_callable(
        lambda x: 0.5 * np.cos(2 * np.pi * x), 128)
    rep = subsolution_report(spec, steep, 0.01)
    assert not rep.passed


def test_critical_value_zero_inside_window():
    res = critical_value(HamiltonianSpec.tilted_pendulum(0.0), 256, 0.01)
    assert res.converged
    assert abs(res.alpha) < 1e-6
    assert len(res.history) == 600
    rep = subsolution_report(HamiltonianSpec.tilted_pendulum(0.0),
                             res.u_final, res.alpha)
    assert rep.passed


def test_critical_value_against_quadrature_oracle():
    res = critical_value(HamiltonianSpec.tilted_pendulum(1.0), 512, 0.01)
    assert res.converged
    assert abs(res.alpha - oracles.PENDULUM_ALPHA_P1) < 2e-3
    # frozen constant agrees with the live quadrature oracle
    assert abs(oracles.pendulum_alpha(1.0)
               - oracles.PENDULUM_ALPHA_P1) < 1e-9


def test_critical_value_free_particle_is_zero():
    res = critical_value(make_free(), 128, 0.01)
    assert res.converged
    assert abs(res.alpha) < 1e-12
