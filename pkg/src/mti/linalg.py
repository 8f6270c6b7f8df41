"""
Complex dense linear algebra
============================

Hermitian factorizations and solves, Levinson-Durbin inversion of Hermitian
Toeplitz matrices and the Hung-Turner (matrix inversion lemma) weight formula.

All routines work in complex double precision and never modify their inputs.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as la

from .errors import NotPositiveDefinite, SingularSystem

__all__ = [
    "H",
    "as_hermitian",
    "cholesky_lower",
    "solve_hermitian",
    "toeplitz_from_column",
    "toeplitz_inverse",
    "levinson_durbin",
    "hung_turner_weights",
]

HERMITIAN_RTOL = 1e-12


def H(a):
    """Conjugate (Hermitian) transpose."""
    return np.conj(np.swapaxes(a, -1, -2))


def _check_finite(a, name):
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")


def as_hermitian(m, rtol=HERMITIAN_RTOL):
    """Validate ``m`` as a square Hermitian matrix and return it as complex.

    Raises ``ValueError`` for non-square, non-finite or non-Hermitian input.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    _check_finite(m, "matrix")
    scale = max(np.max(np.abs(m)), np.finfo(float).tiny)
    if np.max(np.abs(m - H(m))) > rtol * scale:
        raise ValueError("matrix is not Hermitian")
    return m


def _pivot_tolerance(m):
    n = m.shape[0]
    return n * 1e-14 * np.max(np.abs(np.diag(m)))


def cholesky_lower(m):
    """Lower Cholesky factor ``L`` with ``L @ L^H == m``.

    Parameters
    ----------
    m: (n, n) array_like
        Hermitian positive definite matrix.

    Raises
    ------
    NotPositiveDefinite
        When a pivot is not positive or falls below
        ``n * 1e-14 * max|diag(m)|``.
    """
    m = as_hermitian(m)
    try:
        L = la.cholesky(m, lower=True, check_finite=False)
    except la.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    pivots = np.real(np.diag(L)) ** 2
    tol = _pivot_tolerance(m)
    if not np.all(pivots > tol):
        k = int(np.argmin(pivots))
        raise NotPositiveDefinite(f"pivot {k} = {pivots[k]:.3e} below tolerance {tol:.3e}")
    return L


def solve_hermitian(m, b):
    """Solve ``m x = b`` for Hermitian positive definite ``m``.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    L = cholesky_lower(m)
    b = np.asarray(b, dtype=complex)
    if b.shape[0] != L.shape[0]:
        raise ValueError(f"right-hand side length {b.shape[0]} != {L.shape[0]}")
    _check_finite(b, "right-hand side")
    y = la.solve_triangular(L, b, lower=True, check_finite=False)
    return la.solve_triangular(L, y, lower=True, trans="C", check_finite=False)


def toeplitz_from_column(r):
    """Dense Hermitian Toeplitz matrix ``T[i, j] = r[i - j]`` with ``r[-k] = conj(r[k])``."""
    r = np.asarray(r, dtype=complex)
    return la.toeplitz(r, np.conj(r))


def levinson_durbin(r, order=None):
    """Levinson-Durbin recursion on a Hermitian autocorrelation sequence.

    Solves ``T a = rho e_0`` for the prediction-error filter ``a`` (``a[0] == 1``)
    where ``T`` is the Hermitian Toeplitz matrix built from ``r``.

    Parameters
    ----------
    r: array_like
        Lags ``r[0..n-1]``; ``r[0]`` must be real and positive.
    order: int, optional
        Recursion order, defaults to ``len(r) - 1``.

    Returns
    -------
    a: ndarray
        Filter ``[1, a_1, ..., a_order]``.
    rho: ndarray
        Prediction error powers ``rho[0..order]``.
    k: ndarray
        Reflection coefficients ``k[1..order]`` (length ``order``).
    """
    r = np.asarray(r, dtype=complex)
    _check_finite(r, "autocorrelation")
    if order is None:
        order = len(r) - 1
    if order >= len(r):
        raise ValueError("order must be smaller than the number of lags")
    r0 = r[0].real
    if not r0 > 0:
        raise NotPositiveDefinite("r[0] must be positive")
    tol = len(r) * 1e-14 * r0
    a = np.zeros(order + 1, dtype=complex)
    a[0] = 1.0
    rho = np.empty(order + 1)
    rho[0] = r0
    k = np.empty(order, dtype=complex)
    for l in range(1, order + 1):
        # row l of T times the current filter
        delta = np.dot(r[l:0:-1], a[:l])
        kl = -delta / rho[l - 1]
        a[1 : l + 1] = a[1 : l + 1] + kl * np.conj(a[l - 1 :: -1])
        rho[l] = rho[l - 1] * (1.0 - abs(kl) ** 2)
        k[l - 1] = kl
        if not rho[l] > tol:
            raise NotPositiveDefinite(f"prediction error power vanished at step {l}")
    return a, rho, k


def toeplitz_inverse(first_column):
    """Inverse of a Hermitian positive definite Toeplitz matrix in O(n^2).

    The first column of the inverse comes from the Levinson-Durbin recursion,
    the last column from persymmetry, and the remaining entries from the
    Trench/Gohberg-Semencul update

        B[i+1, j+1] = B[i, j] + (v[i+1] v*[j+1] - v*[n-1-i] v[n-1-j]) / v[0]

    where ``v`` is the first column of ``B``.

    Raises
    ------
    NotPositiveDefinite
        When a prediction error power is not positive.
    """
    r = np.asarray(first_column, dtype=complex)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("first_column must be a non-empty vector")
    if abs(r[0].imag) > HERMITIAN_RTOL * abs(r[0]):
        raise ValueError("r[0] must be real")
    n = r.size
    a, rho, _ = levinson_durbin(r)
    v = a / rho[-1]
    B = np.empty((n, n), dtype=complex)
    B[:, 0] = v
    B[0, :] = np.conj(v)
    w = np.conj(v[::-1])  # last column
    B[:, n - 1] = w
    B[n - 1, :] = np.conj(w)
    for i in range(n - 2):
        j = np.arange(i, n - 2)
        B[i + 1, j + 1] = B[i, j] + (v[i + 1] * np.conj(v[j + 1]) - np.conj(v[n - 1 - i]) * v[n - 1 - j]) / v[0]
        B[j + 1, i + 1] = np.conj(B[i + 1, j + 1])
    return B


def hung_turner_weights(X, s, alpha):
    """Loaded-SMI weights via the matrix inversion lemma.

    Returns ``w = s - X (X^H X + M alpha I)^{-1} X^H s``, which is
    ``alpha`` times ``(X X^H / M + alpha I)^{-1} s``.  Only an ``M x M``
    system is solved, so this is cheaper than direct inversion when ``M < N``.

    Parameters
    ----------
    X: (N, M) array_like
        Training snapshots as columns.
    s: (N,) array_like
        Steering vector.
    alpha: float
        Diagonal loading, must be positive.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    X = np.asarray(X, dtype=complex)
    s = np.asarray(s, dtype=complex)
    if X.ndim == 1:
        X = X[:, None]
    M = X.shape[1]
    G = H(X) @ X + M * alpha * np.eye(M)
    try:
        c = solve_hermitian(G, H(X) @ s)
    except NotPositiveDefinite as exc:
        raise SingularSystem(str(exc)) from None
    return s - X @ c
