"""
Maximum-entropy (autoregressive) whitening
==========================================

Yule-Walker solution from known lags, Burg's lattice estimate from data, the
corresponding PSD and the prediction-error (whitening) filter.

Sign convention: the predictor is ``x_hat(n) = sum_i C(i) x(n - i)`` so the
whitening filter is ``[1, -C(1), ..., -C(M)]``.  Lags are
``r[k] = E{x(n) x*(n - k)}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import OrderTooHigh
from .linalg import levinson_durbin

__all__ = [
    "ArModel",
    "autocorrelation",
    "yule_walker",
    "burg_estimate",
    "mem_psd",
    "prediction_error_filter",
    "ar_synthesize",
]


@dataclass(frozen=True)
class ArModel:
    """AR model of order ``len(coefficients)``.

    ``error_power[m]`` is the prediction error power at order ``m`` and
    ``reflection[m-1]`` the reflection coefficient introduced at order ``m``.
    """

    coefficients: np.ndarray
    error_power: np.ndarray
    reflection: np.ndarray

    @property
    def order(self):
        return len(self.coefficients)

    @property
    def noise_power(self):
        return float(self.error_power[-1])

    @property
    def filter(self):
        return np.concatenate(([1.0], -np.asarray(self.coefficients)))


def autocorrelation(x, maxlag):
    """Biased sample lags ``r[k] = (1/L) sum_n x(n) x*(n - k)``, ``k = 0..maxlag``."""
    x = np.asarray(x, dtype=complex)
    L = x.size
    return np.array([np.vdot(x[: L - k], x[k:]) for k in range(maxlag + 1)]) / L


def yule_walker(r, order):
    """Solve the Yule-Walker equations for lags ``r`` (Hermitian Toeplitz, PD)."""
    r = np.asarray(r, dtype=complex)
    if order >= r.size:
        raise OrderTooHigh(f"order {order} needs at least {order + 1} lags")
    a, rho, k = levinson_durbin(r, order)
    return ArModel(-a[1:], rho, k)


def burg_estimate(x, order):
    """Burg lattice estimate of an AR model from one data record.

    Each stage picks the reflection coefficient minimizing the summed
    forward and backward error power,
    ``k = -2 sum f(n) b*(n-1) / sum(|f(n)|^2 + |b(n-1)|^2)``.
    """
    x = np.asarray(x, dtype=complex)
    if order >= x.size:
        raise OrderTooHigh(f"order {order} needs more than {x.size} samples")
    a = np.ones(1, dtype=complex)
    f = x.copy()
    b = x.copy()
    err = np.empty(order + 1)
    err[0] = np.real(np.vdot(x, x)) / x.size
    refl = np.empty(order, dtype=complex)
    for m in range(1, order + 1):
        fm = f[1:]
        bm = b[:-1]
        den = np.real(np.vdot(fm, fm) + np.vdot(bm, bm))
        k = -2.0 * np.vdot(bm, fm) / den if den > 0 else 0.0
        f, b = fm + k * bm, bm + np.conj(k) * fm
        a = np.concatenate((a, [0.0]))
        a = a + k * np.conj(a[::-1])
        refl[m - 1] = k
        err[m] = err[m - 1] * (1.0 - abs(k) ** 2)
    return ArModel(-a[1:], err, refl)


def mem_psd(model, prf, grid=1024):
    """MEM spectrum ``T P / |1 - sum C(i) exp(-j 2 pi i f T)|^2`` on ``f = k prf / grid``.

    Returns ``(freqs, psd)`` covering one PRF interval ``[0, prf)``.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    A = np.fft.fft(model.filter, grid)
    freqs = prf * np.arange(grid) / grid
    return freqs, model.noise_power / prf / np.abs(A) ** 2


def prediction_error_filter(model, x):
    """Whitened sequence ``e(n) = x(n) - sum_i C(i) x(n - i)`` (zero initial state)."""
    x = np.asarray(x)
    if x.size <= model.order:
        raise OrderTooHigh("sequence must be longer than the model order")
    return lfilter(model.filter, [1.0], x)


def ar_synthesize(coefficients, innovation):
    """Run the AR recursion ``x(n) = sum_i C(i) x(n - i) + w(n)`` from rest."""
    a = np.concatenate(([1.0], -np.asarray(coefficients)))
    return lfilter([1.0], a, innovation)
