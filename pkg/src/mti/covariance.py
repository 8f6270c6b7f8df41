"""Sample covariance estimation and diagonal loading."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import NegativeLoading
from .linalg import H

__all__ = ["CovarianceEstimate", "sample_covariance", "with_loading", "carlson_loading"]


@dataclass(frozen=True)
class CovarianceEstimate:
    """Estimated covariance with a symbolic diagonal loading.

    The loading is kept apart from ``matrix`` so that many loading levels can
    be tried against one estimate; :attr:`effective` folds it in.
    """

    matrix: np.ndarray
    sample_count: int
    loading: float = 0.0

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def effective(self):
        if self.loading == 0:
            return self.matrix
        return self.matrix + self.loading * np.eye(self.n)

    def loaded(self, alpha):
        """``matrix + alpha I`` regardless of the recorded loading."""
        return self.matrix + alpha * np.eye(self.n)


def sample_covariance(x):
    """Maximum-likelihood estimate ``X X^H / M``.

    ``x`` is a :class:`~mti.signal_model.TrainingSet` or an ``(N, M)`` array.
    """
    X = np.asarray(getattr(x, "snapshots", x), dtype=complex)
    if X.ndim == 1:
        X = X[:, None]
    M = X.shape[1]
    if M < 1:
        raise ValueError("at least one snapshot is required")
    R = X @ H(X) / M
    R = 0.5 * (R + H(R))
    return CovarianceEstimate(R, M)


def with_loading(est, alpha):
    """Return ``est`` with diagonal loading ``alpha`` recorded."""
    if alpha < 0:
        raise NegativeLoading(f"loading must be non-negative, got {alpha}")
    return replace(est, loading=float(alpha))


def carlson_loading(noise_power, multiplier=10.0):
    """Fixed loading ``multiplier * noise_power`` (10 dB above noise by default)."""
    return multiplier * noise_power
