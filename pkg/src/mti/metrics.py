"""
Quality metrics
===============

Output SINR (Rayleigh quotient), clutter attenuation, improvement factor,
subclutter visibility, observability, and beampatterns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroPower
from .linalg import cholesky_lower

__all__ = [
    "db",
    "undb",
    "sinr_linear",
    "output_sinr",
    "clutter_attenuation",
    "improvement_factor",
    "subclutter_visibility",
    "observability",
    "PatternGrid",
    "pattern_power",
    "beampattern",
    "pattern_gain_at",
    "mean_steering_entry",
    "dirichlet_mean",
]


def db(x):
    return 10.0 * np.log10(x)


def undb(x):
    return 10.0 ** (np.asarray(x) / 10.0)


def sinr_linear(w, s, r_true):
    """``|w^H s|^2 / (w^H R w)`` as a linear ratio (no PD check)."""
    w = np.asarray(w, dtype=complex)
    s = np.asarray(s, dtype=complex)
    num = abs(np.vdot(w, s)) ** 2
    den = np.real(np.vdot(w, np.asarray(r_true) @ w))
    return num / den


def output_sinr(w, s_scaled, r_true):
    """Output SINR in dB.

    ``s_scaled`` carries the signal amplitude (``||s||^2 = N * P``) and
    ``r_true`` is the true interference-plus-noise covariance.
    """
    cholesky_lower(r_true)
    return float(db(sinr_linear(w, s_scaled, r_true)))


def _power(w, r):
    w = np.asarray(w, dtype=complex)
    return np.real(np.vdot(w, np.asarray(r) @ w))


def clutter_attenuation(w, r_clutter):
    """Clutter attenuation ``P_in / P_out`` (linear).

    Input power is the per-element clutter power ``trace(R_c) / N``; output
    power is normalized by the filter's white-noise gain ``||w||^2``.
    """
    r_clutter = np.asarray(r_clutter)
    p_in = np.real(np.trace(r_clutter)) / r_clutter.shape[0]
    p_out = _power(w, r_clutter) / np.real(np.vdot(w, w))
    if not (p_in > 0 and p_out > 0):
        raise ZeroPower("clutter power must be positive")
    return p_in / p_out


def improvement_factor(w, s, r_clutter):
    """Improvement factor ``K_u = q_c * K_p``.

    ``q_c = |w^H s|^2 / (||w||^2 ||s||^2)`` is the normalized signal gain.
    """
    w = np.asarray(w, dtype=complex)
    s = np.asarray(s, dtype=complex)
    q_c = abs(np.vdot(w, s)) ** 2 / (np.real(np.vdot(w, w)) * np.real(np.vdot(s, s)))
    return q_c * clutter_attenuation(w, r_clutter)


def subclutter_visibility(improvement, q_threshold):
    """Subclutter visibility ``K_u / q_threshold``."""
    if not q_threshold > 0:
        raise ZeroPower("threshold ratio must be positive")
    return improvement / q_threshold


def observability(p_target, p_interf_components):
    """Target power over the summed interference component powers."""
    total = float(np.sum(p_interf_components))
    if not (p_target > 0 and total > 0):
        raise ZeroPower("powers must be positive")
    return p_target / total


@dataclass(frozen=True)
class PatternGrid:
    angles: np.ndarray
    gains_db: np.ndarray

    def __post_init__(self):
        if len(self.angles) != len(self.gains_db):
            raise ValueError("angles and gains must have equal length")


PATTERN_NORMALIZATIONS = ("none", "gain")


def pattern_power(w, grid_size, normalize="none"):
    """Linear pattern ``(angles_deg, P)`` on the visible region ``|sin(theta)| < 1``.

    ``normalize='none'`` gives ``|w^H a|^2 / N^2``, so scaling ``w`` by ``c``
    raises the pattern by ``20 log10 |c|``.  ``normalize='gain'`` divides by
    ``N ||w||^2`` instead, which is scale-free and puts the conventional
    beam's peak at 0 dB.
    """
    w = np.asarray(w, dtype=complex)
    n = w.size
    if grid_size < 2 * n:
        raise ValueError("grid_size must be at least twice the number of weights")
    if normalize == "none":
        scale = float(n * n)
    elif normalize == "gain":
        scale = n * np.real(np.vdot(w, w))
    else:
        raise ValueError(f"normalize must be one of {PATTERN_NORMALIZATIONS}")
    # |sum_k w_k exp(-j 2 pi f k)|^2 is the response |w^H a(theta)|^2 at f = sin(theta)/2
    P = np.fft.fftshift(np.abs(np.fft.fft(w, grid_size)) ** 2 / scale)
    u = 2.0 * (np.arange(grid_size) / grid_size - 0.5)
    keep = np.abs(u) < 1.0
    return np.rad2deg(np.arcsin(u[keep])), P[keep]


def beampattern(w, grid_size=4096, normalize="none"):
    """Power pattern (dB) of a half-wavelength ULA with weights ``w``.

    Computed by a zero-padded DFT, shifted so the grid runs over
    ``sin(theta)`` in ``[-1, 1)`` and mapped to degrees; see
    :func:`pattern_power` for the normalizations.
    """
    angles, P = pattern_power(w, grid_size, normalize)
    with np.errstate(divide="ignore"):
        return PatternGrid(angles, db(P))


def pattern_gain_at(pattern, theta):
    """Gain (dB) of ``pattern`` at the grid point closest to ``theta``."""
    i = int(np.argmin(np.abs(np.asarray(pattern.angles) - theta)))
    return float(pattern.gains_db[i])


def mean_steering_entry(n, phi):
    """Mean of ``exp(j phi (i - (n - 1) / 2))`` over ``i = 0..n-1``, summed directly."""
    i = np.arange(n)
    return np.mean(np.exp(1j * phi * (i - (n - 1) / 2.0)))


def dirichlet_mean(n, phi):
    """Closed form ``sin(n phi / 2) / (n sin(phi / 2))`` of :func:`mean_steering_entry`."""
    return np.sin(n * phi / 2.0) / (n * np.sin(phi / 2.0))
