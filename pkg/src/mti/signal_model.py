"""
Signal model
============

Steering vectors, Gaussian-spectrum clutter and far-field jammer covariances,
and seeded generation of training snapshots (clutter + white noise + optional
target contamination).

Powers are linear.  A :class:`ClutterModel` with a ``prf`` describes a pulse
train (temporal domain, modes given by Doppler centre and spectral width);
without a ``prf`` it describes a half-wavelength linear array (spatial domain,
modes given by arrival angle).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

__all__ = [
    "SPEED_OF_LIGHT",
    "WIDTH_TO_VARIANCE",
    "ClutterMode",
    "ClutterModel",
    "Target",
    "TrainingSet",
    "doppler_shift",
    "temporal_steering",
    "spatial_steering",
    "mode_correlation",
    "clutter_autocorrelation",
    "clutter_covariance",
    "coloring_factor",
    "generate_training_set",
    "rayleigh_amplitudes",
    "derive_seed",
    "make_rng",
]

SPEED_OF_LIGHT = 299_792_458.0
# half-power width -> Gaussian variance: sigma^2 = width^2 / WIDTH_TO_VARIANCE / 2
WIDTH_TO_VARIANCE = 2.77
COLORING_JITTER = 1e-12

AMPLITUDE_LAWS = ("rayleigh", "rayleigh_unit_power", "constant", "coherent")
# "rayleigh_coherent": each jammer gets a real unit-mean Rayleigh amplitude and
# no random phase, so jammers stay phase-locked to each other across snapshots
JAMMER_LAWS = ("gaussian", "rayleigh_coherent")


def doppler_shift(v_r, f0):
    """Doppler shift ``2 v_r f0 / c`` in Hz of a target with radial speed ``v_r`` (m/s)."""
    if not f0 > 0:
        raise ValueError("carrier frequency must be positive")
    return 2.0 * v_r * f0 / SPEED_OF_LIGHT


def temporal_steering(n, f_d, prf):
    """Pulse-train steering vector ``exp(j 2 pi f_d k / prf)``, ``k = 0..n-1``; ``||s||^2 = n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n)
    return np.exp(2j * np.pi * f_d * k / prf)


def spatial_steering(n, theta):
    """Half-wavelength ULA steering vector for arrival angle ``theta`` (degrees).

    The phase reference is the array centre: element ``k`` is
    ``exp(j pi sin(theta) (k - (n - 1) / 2))``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not abs(theta) < 90:
        raise ValueError("|theta| must be below 90 degrees")
    k = np.arange(n) - (n - 1) / 2.0
    return np.exp(1j * np.pi * np.sin(np.deg2rad(theta)) * k)


@dataclass(frozen=True)
class ClutterMode:
    """One interference component.

    Temporal modes set ``center_freq`` (Hz) and ``spectral_width`` (Hz at
    half power); spatial modes set ``angle`` (degrees).
    """

    power_fraction: float
    center_freq: Optional[float] = None
    spectral_width: float = 0.0
    angle: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.power_fraction <= 1:
            raise ValueError("power_fraction must lie in (0, 1]")
        if (self.center_freq is None) == (self.angle is None):
            raise ValueError("a mode sets exactly one of center_freq or angle")
        if self.spectral_width < 0:
            raise ValueError("spectral_width must be non-negative")


@dataclass(frozen=True)
class ClutterModel:
    """Interference description: modes, total power, noise floor and size.

    ``amplitude_law`` selects how spatial jammers are realized; the default
    circular Gaussian law matches :func:`clutter_covariance` exactly.
    """

    modes: tuple
    total_interference_power: float
    noise_power: float
    n: int
    prf: Optional[float] = None
    amplitude_law: str = "gaussian"

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.amplitude_law not in JAMMER_LAWS:
            raise ValueError(f"amplitude_law must be one of {JAMMER_LAWS}")
        if self.amplitude_law != "gaussian" and self.prf is not None:
            raise ValueError("only spatial models support non-Gaussian jammer amplitudes")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.noise_power < 0 or self.total_interference_power < 0:
            raise ValueError("powers must be non-negative")
        if self.prf is not None and not self.prf > 0:
            raise ValueError("prf must be positive")
        if self.modes:
            total = sum(m.power_fraction for m in self.modes)
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"mode power fractions sum to {total}, expected 1")
            temporal = self.prf is not None
            for m in self.modes:
                if temporal and m.center_freq is None:
                    raise ValueError("temporal model needs center_freq on every mode")
                if not temporal and m.angle is None:
                    raise ValueError("spatial model needs angle on every mode")

    @property
    def temporal(self):
        return self.prf is not None

    def mode_powers(self):
        return np.array([m.power_fraction * self.total_interference_power for m in self.modes])

    def total_covariance(self):
        """Clutter covariance plus ``noise_power * I``."""
        return clutter_covariance(self) + self.noise_power * np.eye(self.n)


def mode_correlation(spectral_width, prf):
    """One-lag correlation coefficient ``rho`` of a Gaussian-spectrum mode."""
    sigma2 = spectral_width**2 / WIDTH_TO_VARIANCE / 2.0
    return np.exp(-2.0 * (np.pi * np.sqrt(sigma2) / prf) ** 2)


def clutter_autocorrelation(model):
    """Lags ``r[0..n-1]`` of the temporal clutter (noise excluded)."""
    if not model.temporal:
        raise ValueError("autocorrelation lags are defined for temporal models only")
    k = np.arange(model.n)
    r = np.zeros(model.n, dtype=complex)
    for mode, p in zip(model.modes, model.mode_powers()):
        rho = mode_correlation(mode.spectral_width, model.prf)
        r += p * rho ** (k**2) * np.exp(2j * np.pi * mode.center_freq * k / model.prf)
    return r


def clutter_covariance(model):
    """Interference covariance without noise, as a dense Hermitian matrix.

    Temporal models give the Toeplitz matrix of :func:`clutter_autocorrelation`;
    spatial models give ``sum_l P_l e_l e_l^H``.
    """
    if model.temporal:
        r = clutter_autocorrelation(model)
        return la.toeplitz(r, np.conj(r))
    R = np.zeros((model.n, model.n), dtype=complex)
    for mode, p in zip(model.modes, model.mode_powers()):
        e = spatial_steering(model.n, mode.angle)
        R += p * np.outer(e, np.conj(e))
    return R


def coloring_factor(R):
    """Matrix ``L`` with ``L L^H ~= R`` for a PSD, possibly rank-deficient ``R``.

    Cholesky of ``R + 1e-12 * scale * I`` where ``scale`` is the mean diagonal;
    falls back to a clipped eigendecomposition if that still fails.
    """
    R = np.asarray(R, dtype=complex)
    n = R.shape[0]
    scale = max(np.real(np.trace(R)) / n, 0.0)
    if scale == 0.0:
        return np.zeros_like(R)
    try:
        return la.cholesky(R + COLORING_JITTER * scale * np.eye(n), lower=True)
    except la.LinAlgError:
        lam, V = la.eigh(R)
        return V * np.sqrt(np.clip(lam, 0.0, None))


@dataclass(frozen=True)
class Target:
    """Target echo leaking into the training data.

    ``power`` is per element; ``steering`` should have ``||s||^2 = n``.
    """

    steering: np.ndarray
    power: float
    amplitude_law: str = "rayleigh"

    def __post_init__(self):
        if self.amplitude_law not in AMPLITUDE_LAWS:
            raise ValueError(f"amplitude_law must be one of {AMPLITUDE_LAWS}")
        if self.power < 0:
            raise ValueError("target power must be non-negative")


@dataclass(frozen=True)
class TrainingSet:
    """``n x m`` snapshot matrix; columns are snapshots."""

    snapshots: np.ndarray
    seed: Optional[int] = None

    @property
    def n(self):
        return self.snapshots.shape[0]

    @property
    def m(self):
        return self.snapshots.shape[1]


def derive_seed(*keys):
    """Stable 64-bit seed from a tuple of integers/strings.

    Used to give each Monte-Carlo trial its own stream, independent of
    execution order.
    """
    h = hashlib.blake2b(digest_size=8)
    for k in keys:
        h.update(repr(k).encode())
        h.update(b"\x00")
    return int.from_bytes(h.digest(), "little")


def make_rng(seed):
    return np.random.default_rng(seed)


def _circular(rng, shape, power=1.0):
    return np.sqrt(power / 2.0) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def rayleigh_amplitudes(rng, size, law="rayleigh"):
    """Target amplitudes for the given law.

    ``rayleigh`` has unit mean (scale sqrt(2/pi)), ``rayleigh_unit_power`` has
    unit mean square; the other laws give ones.
    """
    if law == "rayleigh":
        return rng.rayleigh(np.sqrt(2.0 / np.pi), size)
    if law == "rayleigh_unit_power":
        return rng.rayleigh(np.sqrt(0.5), size)
    return np.ones(size)


def generate_training_set(model, m, target=None, seed=0, factor=None):
    """Draw ``m`` training snapshots.

    Each column is ``L g + eta (+ A exp(j phi) sqrt(P) s)`` with ``L L^H``
    the clutter covariance, ``g`` unit circular Gaussian, ``eta`` white
    noise of power ``model.noise_power``.  Spatial models with the
    ``rayleigh_coherent`` law replace ``L g`` by phase-locked jammers with
    real Rayleigh amplitudes.  Target amplitude ``A`` and phase
    ``phi`` are drawn independently per snapshot according to
    ``target.amplitude_law``; the ``coherent`` law uses ``A = 1, phi = 0``.

    Parameters
    ----------
    model: ClutterModel
    m: int
        Number of snapshots.
    target: Target, optional
    seed: int or numpy.random.Generator
        Identical seeds give bit-identical output.
    factor: ndarray, optional
        Precomputed :func:`coloring_factor` of the clutter covariance, to
        avoid refactoring it on every trial.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    n = model.n
    if factor is None and model.amplitude_law == "gaussian":
        factor = coloring_factor(clutter_covariance(model))
    if model.amplitude_law == "rayleigh_coherent":
        E = np.stack([spatial_steering(n, md.angle) for md in model.modes], axis=1)
        amp = rng.rayleigh(np.sqrt(2.0 / np.pi), (len(model.modes), m))
        X = E @ (np.sqrt(model.mode_powers())[:, None] * amp)
    else:
        X = factor @ _circular(rng, (n, m))
    X = X + _circular(rng, (n, m), model.noise_power)
    if target is not None:
        s = np.asarray(target.steering, dtype=complex)
        if s.shape != (n,):
            raise ValueError("target steering length does not match model.n")
        A = rayleigh_amplitudes(rng, m, target.amplitude_law)
        if target.amplitude_law == "coherent":
            phi = np.zeros(m)
        else:
            phi = rng.uniform(-np.pi, np.pi, m)
        X = X + np.sqrt(target.power) * np.outer(s, A * np.exp(1j * phi))
    return TrainingSet(X, seed if isinstance(seed, (int, np.integer)) else None)
