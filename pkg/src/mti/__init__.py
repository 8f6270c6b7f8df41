"""
mti
===

Adaptive moving-target-indication filters: loaded sample matrix inversion
with a nonparametric choice of the loading level, linearly and quadratically
constrained LMS, maximum-entropy whitening, and a Monte-Carlo harness that
compares them on clutter and jammer scenarios.
"""
from . import adaptive, covariance, errors, linalg, loading, mem, metrics, signal_model, solvers
from .covariance import CovarianceEstimate, carlson_loading, sample_covariance, with_loading
from .errors import MTIError, NumericError
from .loading import optimize_loading
from .solvers import Algorithm, WeightVector, optimal_weights, rsmi_weights, smi_weights

__version__ = "0.1.0"

__all__ = [
    "adaptive",
    "covariance",
    "errors",
    "linalg",
    "loading",
    "mem",
    "metrics",
    "signal_model",
    "solvers",
    "CovarianceEstimate",
    "carlson_loading",
    "sample_covariance",
    "with_loading",
    "MTIError",
    "NumericError",
    "optimize_loading",
    "Algorithm",
    "WeightVector",
    "optimal_weights",
    "rsmi_weights",
    "smi_weights",
]
