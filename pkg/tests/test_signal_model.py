import numpy as np
import pytest

from mti.covariance import sample_covariance
from mti.signal_model import (
    SPEED_OF_LIGHT,
    ClutterMode,
    ClutterModel,
    Target,
    clutter_autocorrelation,
    clutter_covariance,
    derive_seed,
    doppler_shift,
    generate_training_set,
    mode_correlation,
    rayleigh_amplitudes,
    spatial_steering,
    temporal_steering,
)


def two_mode(n=8, power=1.0, noise=1e-3):
    modes = (ClutterMode(0.5, center_freq=0.0, spectral_width=500.0),
             ClutterMode(0.5, center_freq=1003.0, spectral_width=500.0))
    return ClutterModel(modes, power, noise, n, prf=20_000.0)


def test_doppler_shift():
    assert doppler_shift(0.0, 1e9) == 0.0
    assert doppler_shift(SPEED_OF_LIGHT / 2, 1.0) == pytest.approx(1.0)
    assert doppler_shift(150.0, 10e9) == pytest.approx(2 * 150 * 10e9 / 299_792_458.0)
    assert doppler_shift(150.0, 10e9) == pytest.approx(10_006.9, abs=0.1)
    with pytest.raises(ValueError):
        doppler_shift(1.0, 0.0)


def test_temporal_steering():
    np.testing.assert_allclose(temporal_steering(5, 0.0, 1000.0), np.ones(5))
    np.testing.assert_allclose(temporal_steering(4, 500.0, 1000.0), [1, -1, 1, -1], atol=1e-12)
    s = temporal_steering(8, 4000.0, 20_000.0)
    assert s[1] / s[0] == pytest.approx(np.exp(2j * np.pi / 5))
    assert np.vdot(s, s).real == pytest.approx(8)


def test_spatial_steering():
    np.testing.assert_allclose(spatial_steering(6, 0.0), np.ones(6))
    e = spatial_steering(2, 89.9999)
    assert abs(np.angle(e[1] / e[0])) == pytest.approx(np.pi, abs=1e-6)
    e = spatial_steering(4, -14.0)
    assert np.angle(e[1] / e[0]) == pytest.approx(-0.7601, abs=1e-4)
    assert np.vdot(e, e).real == pytest.approx(4)
    with pytest.raises(ValueError):
        spatial_steering(4, 90.0)


def test_mode_correlation_value():
    sigma2 = 500.0**2 / 5.54
    assert mode_correlation(500.0, 20_000.0) == pytest.approx(np.exp(-2 * (np.pi * np.sqrt(sigma2) / 20_000) ** 2))
    assert mode_correlation(500.0, 20_000.0) == pytest.approx(0.99778, abs=1e-5)


def test_zero_width_dc_clutter_is_constant():
    m = ClutterModel((ClutterMode(1.0, center_freq=0.0),), 2.5, 0.0, 6, prf=1000.0)
    np.testing.assert_allclose(clutter_autocorrelation(m), 2.5 * np.ones(6))


def test_two_mode_lags():
    m = two_mode(n=4, power=3.0)
    r = clutter_autocorrelation(m)
    assert r[0] == pytest.approx(3.0)
    rho = mode_correlation(500.0, 20_000.0)
    expected = 1.5 * rho + 1.5 * rho * np.exp(2j * np.pi * 1003 / 20_000)
    assert r[1] == pytest.approx(expected)
    assert abs(r[1].imag) > 0


def test_covariance_hermitian_toeplitz_and_pd():
    m = two_mode(n=16)
    R = clutter_covariance(m)
    np.testing.assert_allclose(R, R.conj().T)
    np.testing.assert_allclose(R[1:, 1:], R[:-1, :-1])
    assert np.linalg.eigvalsh(m.total_covariance()).min() > 0


def test_spatial_covariance():
    modes = tuple(ClutterMode(1 / 3, angle=a) for a in (-14, 71, 66))
    m = ClutterModel(modes, 3.0, 0.1, 8)
    R = clutter_covariance(m)
    e = spatial_steering(8, 71)
    R_ref = sum(np.outer(spatial_steering(8, a), spatial_steering(8, a).conj()) for a in (-14, 71, 66))
    np.testing.assert_allclose(R, R_ref, atol=1e-12)
    assert np.real(np.vdot(e, R @ e)) > 0


def test_model_validation():
    with pytest.raises(ValueError):
        ClutterModel((ClutterMode(0.5, center_freq=0.0),), 1.0, 0.1, 4, prf=100.0)
    with pytest.raises(ValueError):
        ClutterMode(0.5)
    with pytest.raises(ValueError):
        ClutterModel((ClutterMode(1.0, angle=0.0),), 1.0, 0.1, 4, prf=100.0)


def test_all_zero_model_gives_zeros():
    m = ClutterModel((ClutterMode(1.0, center_freq=0.0, spectral_width=10.0),), 0.0, 0.0, 4, prf=100.0)
    assert np.all(generate_training_set(m, 5, seed=3).snapshots == 0)


def test_noise_only_covariance():
    m = ClutterModel((ClutterMode(1.0, center_freq=0.0),), 0.0, 0.2, 4, prf=100.0)
    R = sample_covariance(generate_training_set(m, 100_000, seed=7)).matrix
    assert np.max(np.abs(R - 0.2 * np.eye(4))) < 0.03 * 0.2


def test_sample_covariance_converges():
    m = two_mode(n=8)
    M = 10_000
    R = sample_covariance(generate_training_set(m, M, seed=11)).matrix
    Rt = m.total_covariance()
    assert np.linalg.norm(R - Rt) / np.linalg.norm(Rt) < 10 / np.sqrt(M)


def test_determinism_and_seed_sensitivity():
    m = two_mode()
    a = generate_training_set(m, 7, Target(temporal_steering(8, 4000, 20_000), 0.5), seed=99)
    b = generate_training_set(m, 7, Target(temporal_steering(8, 4000, 20_000), 0.5), seed=99)
    c = generate_training_set(m, 7, seed=100)
    assert np.array_equal(a.snapshots, b.snapshots)
    assert not np.array_equal(a.snapshots, c.snapshots)
    assert a.n == 8 and a.m == 7


def test_rayleigh_amplitude_mean():
    rng = np.random.default_rng(5)
    assert np.mean(rayleigh_amplitudes(rng, 100_000)) == pytest.approx(1.0, rel=0.02)
    assert np.mean(rayleigh_amplitudes(rng, 100_000, "rayleigh_unit_power") ** 2) == pytest.approx(1.0, rel=0.02)


def test_contamination_power_matches_signal_power():
    m = ClutterModel((ClutterMode(1.0, center_freq=0.0),), 0.0, 0.0, 4, prf=100.0)
    s = temporal_steering(4, 10.0, 100.0)
    X = generate_training_set(m, 100_000, Target(s, 0.7, "rayleigh_unit_power"), seed=1).snapshots
    per_element = np.mean(np.abs(X) ** 2)
    assert per_element == pytest.approx(0.7, rel=0.02)


def test_coherent_jammers_have_listing_power():
    modes = tuple(ClutterMode(1 / 3, angle=a) for a in (-14, 71, 66))
    m = ClutterModel(modes, 3.0, 0.0, 8, amplitude_law="rayleigh_coherent")
    X = generate_training_set(m, 50_000, seed=2).snapshots
    # real unit-mean Rayleigh amplitudes have mean square 4/pi
    E = np.stack([spatial_steering(8, a) for a in (-14, 71, 66)], 1)
    amp = np.linalg.lstsq(E, X, rcond=None)[0]
    assert np.max(np.abs(amp.imag)) < 1e-9
    assert np.mean(amp.real**2) == pytest.approx(4 / np.pi, rel=0.02)


def test_derive_seed_is_stable():
    assert derive_seed(1, "REG_AUT", 8, 0, 3) == derive_seed(1, "REG_AUT", 8, 0, 3)
    assert derive_seed(1, "REG_AUT", 8, 0, 3) != derive_seed(1, "REG_AUT", 8, 0, 4)
    assert 0 <= derive_seed(0) < 2**64
