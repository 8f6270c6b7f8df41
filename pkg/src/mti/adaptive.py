"""
Iterative weight updates
========================

LMS, NLMS, Frost's linearly constrained LMS, the quadratically constrained
LMS and RLS.  Each update is a pure function taking an :class:`AdaptiveState`
and one snapshot and returning a new state.

Error convention: ``e = d - w^H x`` and ``w <- w + mu x e*``.  With ``d = 0``
this is the interference canceller ``w <- w - mu x (x^H w)``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import ConstraintDirectionCollapse, ZeroSnapshot, ZeroSteering

__all__ = [
    "AdaptiveState",
    "lms_init",
    "frost_init",
    "quad_init",
    "rls_init",
    "lms_step",
    "nlms_step",
    "frost_lclms_step",
    "quad_lms_step",
    "rls_step",
    "run_updates",
]

CONSTRAINED_STEP_SCALE = 2.0
_TINY = 1e-300


@dataclass(frozen=True)
class AdaptiveState:
    """Weights plus whatever the update rule carries between snapshots.

    ``s`` is the look direction for the constrained rules; ``P`` and
    ``forgetting`` are used by RLS only.
    """

    w: np.ndarray
    mu0: float = 0.25
    s: Optional[np.ndarray] = None
    P: Optional[np.ndarray] = None
    forgetting: float = 1.0
    step_scale: float = CONSTRAINED_STEP_SCALE


def _vec(x):
    return np.asarray(x, dtype=complex)


def lms_init(n, mu0, w0=None):
    w = np.zeros(n, dtype=complex) if w0 is None else _vec(w0).copy()
    return AdaptiveState(w=w, mu0=mu0)


def frost_init(s, mu0=0.25, w0=None):
    """Frost state; weights start at the quiescent ``f = s / (s^H s)`` unless given."""
    s = _vec(s)
    ss = np.real(np.vdot(s, s))
    if not ss > 0:
        raise ZeroSteering("steering vector has zero norm")
    w = s / ss if w0 is None else _vec(w0).copy()
    return AdaptiveState(w=w, mu0=mu0, s=s)


def quad_init(s, mu0=0.25, init="unit"):
    """Quadratic-constraint state starting at ``s / ||s||`` (``init='unit'``) or ``s / N``."""
    s = _vec(s)
    norm = np.linalg.norm(s)
    if not norm > 0:
        raise ZeroSteering("steering vector has zero norm")
    if init == "unit":
        w = s / norm
    elif init == "frost":
        w = s / s.size
    else:
        raise ValueError("init must be 'unit' or 'frost'")
    return AdaptiveState(w=w, mu0=mu0, s=s)


def rls_init(n, delta=1.0, forgetting=1.0, w0=None):
    """RLS state with ``P = I / delta``."""
    if not 0 < forgetting <= 1:
        raise ValueError("forgetting factor must lie in (0, 1]")
    w = np.zeros(n, dtype=complex) if w0 is None else _vec(w0).copy()
    return AdaptiveState(w=w, P=np.eye(n, dtype=complex) / delta, forgetting=forgetting)


def lms_step(state, x, d=0.0, mu=None, normalize=False):
    """Plain LMS: ``w <- w + mu x (d - w^H x)*`` with ``mu = state.mu0`` by default."""
    x = _vec(x)
    mu = state.mu0 if mu is None else mu
    e = d - np.vdot(state.w, x)
    w = state.w + mu * x * np.conj(e)
    if normalize:
        w = w / np.linalg.norm(w)
    return replace(state, w=w)


def nlms_step(state, x, d=0.0, normalize=False):
    """NLMS: LMS with ``mu = mu0 / (x^H x)``.

    ``normalize`` rescales the weights to unit norm after the update.
    """
    x = _vec(x)
    xx = np.real(np.vdot(x, x))
    if not xx > 0:
        raise ZeroSnapshot("snapshot has zero energy")
    return lms_step(state, x, d, mu=state.mu0 / xx, normalize=normalize)


def frost_lclms_step(state, x):
    """Frost update ``w <- P (w - mu y* x) + f`` keeping ``w^H s = 1``.

    ``P = I - s s^H / (s^H s)``, ``f = s / (s^H s)``, ``y = w^H x`` and
    ``mu = step_scale * mu0 / (x^H x)``.
    """
    s = state.s
    if s is None:
        raise ZeroSteering("Frost update needs a look direction")
    ss = np.real(np.vdot(s, s))
    if not ss > 0:
        raise ZeroSteering("steering vector has zero norm")
    x = _vec(x)
    xx = np.real(np.vdot(x, x))
    if not xx > 0:
        return state
    mu = state.step_scale * state.mu0 / xx
    e = state.w - mu * np.vdot(x, state.w) * x
    w = e - s * (np.vdot(s, e) / ss) + s / ss
    return replace(state, w=w)


def quad_lms_step(state, x, normalize=False, constraint_gain=1.0):
    """Quadratically constrained LMS update.

    ``w <- w - mu [x (x^H w) - g lam s (s^H w)]`` with the per-step multiplier
    ``lam = |x^H w|^2 / |s^H w|^2`` and ``mu = step_scale * mu0 / (x^H x)``.
    With the default ``g = 1`` a snapshot along ``s`` leaves ``w`` unchanged;
    ``g > 1`` over-weights the constraint term and pulls ``w`` toward ``s``.
    """
    s = state.s
    w = state.w
    x = _vec(x)
    sw = np.vdot(s, w)
    if abs(sw) < _TINY:
        raise ConstraintDirectionCollapse("weights orthogonal to the look direction")
    xx = np.real(np.vdot(x, x))
    if not xx > 0:
        return state
    xw = np.vdot(x, w)
    lam = constraint_gain * abs(xw) ** 2 / abs(sw) ** 2
    mu = state.step_scale * state.mu0 / xx
    w = w - mu * (x * xw - lam * s * sw)
    if normalize:
        w = w / np.linalg.norm(w)
    return replace(state, w=w)


def rls_step(state, x, d=0.0):
    """Exponentially weighted RLS update (P symmetrized every step)."""
    x = _vec(x)
    P = state.P
    lam_inv = 1.0 / state.forgetting
    Px = P @ x
    k = lam_inv * Px / (1.0 + lam_inv * np.real(np.vdot(x, Px)))
    P = lam_inv * (P - np.outer(k, np.conj(x) @ P))
    P = 0.5 * (P + P.conj().T)
    e = d - np.vdot(state.w, x)
    w = state.w + k * np.conj(e)
    return replace(state, w=w, P=P)


def run_updates(step, state, X, **kwargs):
    """Apply ``step`` to each column of ``X`` in order and return the final state."""
    X = np.asarray(X)
    for j in range(X.shape[1]):
        state = step(state, X[:, j], **kwargs)
    return state
