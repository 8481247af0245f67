"""Curvature profiles, super-differentials, quadratic envelopes."""

import numpy as np
import pytest

from weakkam import (GridFunction, KTooSmallError, c11_test,
                     periodic_distance, quadratic_envelope,
                     regularity_profile, superdifferential_interval)


def cos_fn(amplitude=0.1, n=256):
    return GridFunction.from_callable(
        lambda x: amplitude * np.cos(2 * np.pi * x), n)


def kink_fn(n=256):
    return GridFunction.from_callable(lambda x: periodic_distance(x, 0.5), n)


def test_profile_of_smooth_function():
    prof = regularity_profile(cos_fn())
    want = 0.1 * 4 * np.pi ** 2 / 2          # max |u''| / 2
    assert prof.k_plus == pytest.approx(want, rel=1e-3)
    assert prof.k_minus == pytest.approx(want, rel=1e-3)
    assert prof.stable
    assert prof.second_differences.shape == (256,)


def test_profile_of_kinked_function():
    u = kink_fn()
    prof = regularity_profile(u)
    # nodal kinks carry curvature of the order of the grid size, and it
    # doubles under refinement, so the profile is flagged unstable
    assert prof.k_plus == pytest.approx(u.n, rel=1e-6)
    assert prof.k_minus == pytest.approx(u.n, rel=1e-6)
    assert not prof.stable


def test_c11_split():
    flag_smooth, kp, km = c11_test(cos_fn())
    assert flag_smooth and kp > 0 and km > 0
    flag_kink, _, _ = c11_test(kink_fn())
    assert not flag_kink


def test_superdifferential_interval_geometry():
    u = kink_fn()
    # upward kink at the distance minimum: no supporting slope at any K
    assert superdifferential_interval(u, u.n // 2, 50.0) is None
    # downward kink at the maximum supports every slope in [-1, 1]
    lo, hi = superdifferential_interval(u, 0, 2.0)
    assert lo < -0.99 and hi > 0.99
    # smooth point of a smooth function pins the slope near the gradient
    us = cos_fn()
    i = 64
    lo_s, hi_s = superdifferential_interval(us, i, 2.5)
    du = us.gradient()[i]
    assert lo_s <= du <= hi_s
    assert hi_s - lo_s < 1.5


def test_quadratic_envelope_reconstructs_smooth_function():
    u = cos_fn()
    k_true = 0.1 * 4 * np.pi ** 2 / 2
    env = quadratic_envelope(u, 1.1 * k_true)
    assert env.covered.all()
    assert len(env.anchor_x) == u.n
    assert env.reconstruction_error < 1e-3
    # evaluating the envelope away from the nodes stays close to u
    xs = np.linspace(0, 1, 97, endpoint=False)
    vals = env.evaluate(xs)
    assert np.max(np.abs(vals - 0.1 * np.cos(2 * np.pi * xs))) < 1e-3


def test_quadratic_envelope_rejects_small_curvature():
    # 0.5 cos has semi-concavity constant near 9.87; K = 5 undershoots
    u = cos_fn(amplitude=0.5)
    with pytest.raises(KTooSmallError):
        quadratic_envelope(u, 5.0)
    env = quadratic_envelope(u, 11.0)
    assert env.reconstruction_error < 1e-6


def test_quadratic_envelope_rejects_upward_kink():
    with pytest.raises(KTooSmallError):
        quadratic_envelope(kink_fn(), 10.0)
