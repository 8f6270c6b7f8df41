"""
Loading-level optimization
==========================

Nonparametric choice of the diagonal loading ``alpha`` for loaded SMI.  The
loaded weights are linearized around the current loading,

    w(alpha) ~ w_t - alpha v_t,   w_t = (R_hat + alpha_i I)^{-1} s,
                                  v_t = (R_hat + alpha_i I)^{-1} w_t,

and ``w^H R_hat w`` is minimized under ``|w^H s|^2 = 1`` with a Lagrange
multiplier.  A few fixed-point passes (three by default) replace the single
linearization, since the first-order expansion is only accurate near the
optimum.  No calibration-error model or interference rank is assumed.

The steering vector is normalized to unit norm internally; the multiplier
and loading formulas are not invariant to its scale.  They are not invariant
to the absolute power scale either: the term ``1 - w^H s`` mixes a pure
number with a quantity in inverse power units.  The update behaves as
intended when ``R_hat`` is in small absolute units (noise around -60 to
-70 dB, as in the scenarios); at unit noise power the first update is
typically clamped to zero.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import List

import numpy as np

from .covariance import CovarianceEstimate
from .errors import DegenerateDirection
from .linalg import solve_hermitian
from .solvers import Algorithm, WeightVector

__all__ = ["AlphaIteration", "lambda_of", "alpha_update", "optimize_loading", "write_alpha_trace"]

_TINY = 1e-300


@dataclass(frozen=True)
class AlphaIteration:
    alpha: float
    w_tilde: np.ndarray
    v_tilde: np.ndarray
    lam: float
    next_alpha: float


def lambda_of(w_tilde, v_tilde, s):
    """Lagrange multiplier of the linearized loading problem.

    ``lam = -1 - Re[2 (1 - w^H s) w^H v + (w^H w)(v^H s)] / |s^H v|^2``
    """
    sv = np.vdot(s, v_tilde)
    den = abs(sv) ** 2
    if not den >= _TINY**2 or abs(sv) < _TINY:
        raise DegenerateDirection("s^H v vanished")
    ws = np.vdot(w_tilde, s)
    wv = np.vdot(w_tilde, v_tilde)
    ww = np.vdot(w_tilde, w_tilde)
    vs = np.vdot(v_tilde, s)
    return float(-1.0 - np.real(2.0 * (1.0 - ws) * wv + ww * vs) / den)


def alpha_update(w_tilde, v_tilde, s, lam):
    """Stationary loading ``Re(w^H w + v^H s + lam v^H s) / Re(2 v^H w)``, clamped at 0."""
    vw = np.vdot(v_tilde, w_tilde)
    den = 2.0 * np.real(vw)
    if abs(den) < _TINY:
        raise DegenerateDirection("v^H w vanished")
    vs = np.vdot(v_tilde, s)
    num = np.real(np.vdot(w_tilde, w_tilde) + vs + lam * vs)
    return max(float(num / den), 0.0)


def optimize_loading(r_hat, s, sigma2_noise, iterations=3, alpha0=None):
    """Iteratively choose the loading level and return the loaded SMI weights.

    Parameters
    ----------
    r_hat: CovarianceEstimate or (N, N) ndarray
        Sample covariance; any recorded loading is ignored.
    s: (N,) array_like
        Steering vector (any scale; normalized internally).
    sigma2_noise: float
        White-noise power; the iteration starts from ``alpha0 = sigma2_noise``.
    iterations: int
        Number of linearize/update passes ``T``.
    alpha0: float, optional
        Override of the starting loading.

    Returns
    -------
    alpha: float
        Final loading ``alpha_{T+1}``.
    w: WeightVector
        ``(R_hat + alpha I)^{-1} s`` for the caller's ``s``, tagged ``RSMI_OPT``.
    trace: list of AlphaIteration
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    R = r_hat.matrix if isinstance(r_hat, CovarianceEstimate) else np.asarray(r_hat, dtype=complex)
    s = np.asarray(s, dtype=complex)
    s_unit = s / np.linalg.norm(s)
    eye = np.eye(R.shape[0])
    alpha = float(sigma2_noise if alpha0 is None else alpha0)
    trace: List[AlphaIteration] = []
    for _ in range(iterations):
        A = R + alpha * eye
        w_t = solve_hermitian(A, s_unit)
        v_t = solve_hermitian(A, w_t)
        lam = lambda_of(w_t, v_t, s_unit)
        nxt = alpha_update(w_t, v_t, s_unit, lam)
        trace.append(AlphaIteration(alpha, w_t, v_t, lam, nxt))
        alpha = nxt
    w = solve_hermitian(R + alpha * eye, s)
    return alpha, WeightVector(w, Algorithm.RSMI_OPT), trace


def write_alpha_trace(trace, path):
    """Dump ``iteration,alpha,lambda,next_alpha`` rows as CSV."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["iteration", "alpha", "lambda", "next_alpha"])
        for i, it in enumerate(trace, start=1):
            out.writerow([i, repr(it.alpha), repr(it.lam), repr(it.next_alpha)])
