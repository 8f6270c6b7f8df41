"""
Closed-form weight computation
==============================

Known-covariance (optimal) weights, sample matrix inversion with and without
diagonal loading, the Gram-Schmidt whitening transform and the detection
statistic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .covariance import sample_covariance
from .linalg import as_hermitian, cholesky_lower, solve_hermitian

__all__ = [
    "Algorithm",
    "WeightVector",
    "optimal_weights",
    "smi_weights",
    "rsmi_weights",
    "gram_schmidt_whitener",
    "test_statistic",
]


class Algorithm(str, enum.Enum):
    OPTIMAL = "OPTIMAL"
    SMI = "SMI"
    RSMI = "RSMI"
    RSMI_OPT = "RSMI_OPT"
    FROST_LMS = "FROST_LMS"
    QUAD_LMS = "QUAD_LMS"
    LMS = "LMS"
    NLMS = "NLMS"
    RLS = "RLS"
    MEM = "MEM"


@dataclass(frozen=True)
class WeightVector:
    """Filter weights tagged with the algorithm that produced them."""

    values: np.ndarray
    algorithm: Algorithm

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if not np.all(np.isfinite(v)):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "values", v)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return self.values.size


def optimal_weights(r, s):
    """Wiener-Hopf weights ``R^{-1} s`` for a known covariance ``R``."""
    return WeightVector(solve_hermitian(r, s), Algorithm.OPTIMAL)


def smi_weights(x, s):
    """Sample matrix inversion weights ``R_hat^{-1} s``.

    Raises ``NotPositiveDefinite`` when the estimate is singular (generically
    when there are fewer snapshots than elements).
    """
    est = sample_covariance(x)
    return WeightVector(solve_hermitian(est.matrix, s), Algorithm.SMI)


def rsmi_weights(x, s, alpha):
    """Loaded SMI weights ``(R_hat + alpha I)^{-1} s``, ``alpha > 0``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    est = sample_covariance(x)
    return WeightVector(solve_hermitian(est.loaded(alpha), s), Algorithm.RSMI)


def gram_schmidt_whitener(r):
    """Lower-triangular whitening transform ``T = L^{-1}`` with ``T R T^H = I``.

    ``L`` is the lower Cholesky factor of ``R``; applying ``T`` to snapshots
    with covariance ``R`` performs the same decorrelation as a Gram-Schmidt
    canceller lattice followed by power normalization.
    """
    L = cholesky_lower(as_hermitian(r))
    return la.solve_triangular(L, np.eye(L.shape[0], dtype=complex), lower=True)


def test_statistic(w, x):
    """Detection statistic ``w^H x``."""
    w = np.asarray(w, dtype=complex)
    x = np.asarray(getattr(x, "values", x), dtype=complex)
    if w.shape != x.shape:
        raise ValueError(f"length mismatch: {w.shape} vs {x.shape}")
    return np.vdot(w, x)
