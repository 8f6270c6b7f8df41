from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mti.adaptive import (
    frost_init,
    frost_lclms_step,
    lms_init,
    lms_step,
    nlms_step,
    quad_init,
    quad_lms_step,
    rls_init,
    rls_step,
    run_updates,
)
from mti.errors import ConstraintDirectionCollapse, ZeroSnapshot, ZeroSteering
from mti.metrics import dirichlet_mean, mean_steering_entry, sinr_linear
from mti.signal_model import ClutterMode, ClutterModel, generate_training_set, spatial_steering

seeds = st.integers(0, 2**32 - 1)


def cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


# -- LMS / NLMS ---------------------------------------------------------------

def test_lms_zero_snapshot_and_zero_error(rng):
    st0 = lms_init(4, 0.1, w0=cvec(rng, 4))
    np.testing.assert_array_equal(lms_step(st0, np.zeros(4), d=0.0).w, st0.w)
    x = cvec(rng, 4)
    np.testing.assert_allclose(lms_step(st0, x, d=np.vdot(st0.w, x)).w, st0.w)


def test_lms_hand_step():
    e1 = np.array([1.0, 0, 0])
    st1 = lms_step(lms_init(3, 0.5), e1, d=1.0)
    np.testing.assert_allclose(st1.w, 0.5 * e1)
    # second step: e = 1 - 0.5 = 0.5 -> w = 0.5 + 0.5 * 0.5
    np.testing.assert_allclose(lms_step(st1, e1, d=1.0).w, 0.75 * e1)


def test_lms_canceller_form(rng):
    st0 = lms_init(5, 0.05, w0=cvec(rng, 5))
    x = cvec(rng, 5)
    np.testing.assert_allclose(lms_step(st0, x).w, st0.w - 0.05 * x * np.vdot(x, st0.w))


def test_nlms_effective_step():
    x = np.array([1.0, 1.0])
    st0 = lms_init(2, 0.25, w0=np.array([1.0, 0.0]))
    np.testing.assert_allclose(nlms_step(st0, x).w, lms_step(st0, x, mu=0.125).w)
    with pytest.raises(ZeroSnapshot):
        nlms_step(st0, np.zeros(2))


@given(seeds, st.floats(0.1, 100.0))
def test_nlms_homogeneity(seed, c):
    rng = np.random.default_rng(seed)
    st0 = lms_init(6, 0.3, w0=cvec(rng, 6))
    x = cvec(rng, 6)
    np.testing.assert_allclose(nlms_step(st0, c * x).w, nlms_step(st0, x).w, rtol=1e-10, atol=1e-12)


def test_nlms_normalize_gives_unit_norm(rng):
    st1 = nlms_step(lms_init(4, 0.5, w0=np.ones(4)), cvec(rng, 4), normalize=True)
    assert np.linalg.norm(st1.w) == pytest.approx(1.0)


def test_lms_converges_to_wiener(rng):
    n = 4
    w_true = cvec(rng, n)
    X = rng.standard_normal((n, 4000)) + 1j * rng.standard_normal((n, 4000))
    d = np.conj(w_true) @ X
    st1 = lms_init(n, 0.0)
    for j in range(X.shape[1]):
        st1 = nlms_step(replace(st1, mu0=0.5), X[:, j], d=d[j])
    np.testing.assert_allclose(st1.w, w_true, atol=1e-6)


# -- Frost ----------------------------------------------------------------------

def test_frost_target_snapshot_keeps_quiescent():
    s = spatial_steering(8, 10.0)
    st0 = frost_init(s)
    np.testing.assert_allclose(frost_lclms_step(st0, 3j * s).w, s / 8, atol=1e-15)


def test_frost_all_ones_matches_listing_form(rng):
    n = 6
    w = cvec(rng, n)
    x = cvec(rng, n)
    st0 = frost_init(np.ones(n), 0.25, w0=w)
    mu = 2 * 0.25 / np.vdot(x, x).real
    e = w - mu * np.vdot(x, w) * x
    np.testing.assert_allclose(frost_lclms_step(st0, x).w, e - e.sum() / n + 1 / n, atol=1e-14)


@given(seeds, st.floats(-80, 80))
def test_frost_constraint_every_step(seed, theta):
    rng = np.random.default_rng(seed)
    s = spatial_steering(16, theta)
    st1 = frost_init(s, 0.25, w0=s / 4.0)
    for _ in range(50):
        st1 = frost_lclms_step(st1, cvec(rng, 16) * 10 ** rng.uniform(-3, 3))
        assert abs(np.vdot(st1.w, s) - 1) <= 1e-12


def test_frost_zero_steering():
    with pytest.raises(ZeroSteering):
        frost_init(np.zeros(3))


def jammer_model(n, sir_db=-60, noise=1e-6):
    ip = noise * 10 ** ((10 - sir_db) / 10)
    modes = tuple(ClutterMode(1 / 3, angle=a) for a in (-14, 71, 66))
    return ClutterModel(modes, ip, noise, n)


def test_frost_learning_curve_approaches_ideal():
    n = 64
    m = jammer_model(n)
    R = m.total_covariance()
    s = spatial_steering(n, 0.0)
    ideal = sinr_linear(np.linalg.solve(R, s), s, R)
    checkpoints = (8, 64, 512)
    curves = []
    for seed in range(8):
        X = generate_training_set(m, 512, seed=seed).snapshots
        st1 = frost_init(s)
        curve = []
        for j in range(X.shape[1]):
            st1 = frost_lclms_step(st1, X[:, j])
            if (j + 1) in checkpoints:
                curve.append(sinr_linear(st1.w, s, R) / ideal)
        curves.append(curve)
    mean_db = 10 * np.log10(np.mean(curves, axis=0))
    assert mean_db[0] < -30.0
    assert mean_db[2] > mean_db[0] + 30.0
    # steady-state misadjustment of a fixed-step update
    assert mean_db[2] > -3.0


# -- quadratic constraint -------------------------------------------------------

def test_quad_orthogonal_snapshot_leaves_weights():
    s = np.ones(4)
    w = np.array([1.0, 1.0, 0.0, 0.0])
    x = np.array([0.0, 0.0, 1.0, -1.0])
    np.testing.assert_array_equal(quad_lms_step(replace(quad_init(s, 0.25), w=w), x).w, w)


def test_quad_target_snapshot_cannot_erode_target(rng):
    s = spatial_steering(8, 20.0)
    st0 = quad_init(s, 0.25)
    c = cvec(rng, 1)[0]
    np.testing.assert_allclose(quad_lms_step(st0, c * s).w, st0.w, atol=1e-14)
    # an over-weighted constraint term pulls toward s instead
    st1 = quad_init(s, 0.25)
    st1 = replace(st1, w=st1.w + 0.1 * cvec(rng, 8))
    st2 = quad_lms_step(st1, s, constraint_gain=3.0)
    cos = lambda w: abs(np.vdot(w, s)) / (np.linalg.norm(w) * np.linalg.norm(s))
    assert cos(st2.w) > cos(st1.w)


def test_quad_init_modes_and_collapse():
    s = np.array([1.0, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(quad_init(s).w, s / 2)
    np.testing.assert_allclose(quad_init(s, init="frost").w, s / 4)
    with pytest.raises(ValueError):
        quad_init(s, init="other")
    st0 = quad_init(s)
    with pytest.raises(ConstraintDirectionCollapse):
        quad_lms_step(replace(st0, w=np.array([1.0, -1.0, 0.0, 0.0])), np.ones(4))


def test_quad_normalize_and_scale_free_direction(rng):
    s = spatial_steering(8, 0.0)
    x = cvec(rng, 8)
    a = quad_lms_step(quad_init(s), x)
    b = quad_lms_step(quad_init(s), x, normalize=True)
    assert np.linalg.norm(b.w) == pytest.approx(1.0)
    np.testing.assert_allclose(b.w, a.w / np.linalg.norm(a.w))


def test_quad_stationary_point_is_generalized_eigenvector():
    # with a decaying step the weights settle where (R - lam s s^H) w = 0, i.e. w ~ R^{-1} s
    n = 8
    m = jammer_model(n, sir_db=-20, noise=1.0)
    R = m.total_covariance()
    s = spatial_steering(n, 0.0)
    w_opt = np.linalg.solve(R, s)
    X = generate_training_set(m, 20_000, seed=3).snapshots

    def misalignment(w):
        # 1 - cos^2 in the R-weighted inner product; zero only on the R^{-1} s ray
        c = abs(np.vdot(w, R @ w_opt)) ** 2 / (np.vdot(w, R @ w).real * np.vdot(w_opt, R @ w_opt).real)
        return 1.0 - c

    st1 = quad_init(s, 0.25)
    start = misalignment(st1.w)
    for j in range(X.shape[1]):
        st1 = quad_lms_step(replace(st1, mu0=0.25 / (1 + j / 200)), X[:, j], normalize=True)
    end = misalignment(st1.w)
    assert end < 0.01 * start
    loss_db = 10 * np.log10(sinr_linear(st1.w, s, R) / sinr_linear(w_opt, s, R))
    assert loss_db > -0.1


def test_jammer_mean_closed_form():
    rng = np.random.default_rng(8)
    for n in (4, 5, 64, 1024):
        for phi in rng.uniform(0.01, 2 * np.pi - 0.01, 20):
            assert abs(abs(mean_steering_entry(n, phi)) - abs(dirichlet_mean(n, phi))) <= 1e-10


# -- RLS --------------------------------------------------------------------------

def test_rls_zero_snapshot():
    st0 = rls_init(3, w0=np.array([1.0, 2.0, 3.0]))
    st1 = rls_step(st0, np.zeros(3), d=1.0)
    np.testing.assert_array_equal(st1.w, st0.w)
    np.testing.assert_array_equal(st1.P, st0.P)


def test_rls_first_step_lemma():
    e1 = np.array([1.0, 0, 0])
    st1 = rls_step(rls_init(3), e1)
    np.testing.assert_allclose(st1.P, np.eye(3) - np.outer(e1, e1) / 2)


def test_rls_matches_regularized_least_squares(rng):
    n, m, delta = 5, 60, 1e-3
    X = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    d = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    st1 = rls_init(n, delta=delta)
    for j in range(m):
        st1 = rls_step(st1, X[:, j], d=d[j])
    R_hat = X @ X.conj().T + delta * np.eye(n)
    p_hat = X @ np.conj(d)
    np.testing.assert_allclose(st1.w, np.linalg.solve(R_hat, p_hat), rtol=1e-8, atol=1e-10)


def test_rls_P_stays_hermitian(rng):
    n = 6
    st1 = rls_init(n, delta=0.1, forgetting=0.99)
    X = rng.standard_normal((n, 10_000)) + 1j * rng.standard_normal((n, 10_000))
    st1 = run_updates(rls_step, st1, X)
    assert np.max(np.abs(st1.P - st1.P.conj().T)) <= 1e-10 * np.max(np.abs(st1.P))
    assert np.all(np.isfinite(st1.w))


def test_rls_rejects_bad_forgetting():
    with pytest.raises(ValueError):
        rls_init(3, forgetting=0.0)
    with pytest.raises(ValueError):
        rls_init(3, forgetting=1.5)
