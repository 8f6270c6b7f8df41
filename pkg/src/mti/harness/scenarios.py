"""
Monte-Carlo scenarios
=====================

Three experiments:

``run_reg_aut``
    Loaded SMI on a pulse train with two Gaussian clutter modes.  Known
    covariance weights, fixed loading and iteratively optimized loading are
    compared over ``N``, ``M`` and the signal-to-clutter ratio.
``run_quad_learn``
    Learning curves of the quadratically constrained LMS and Frost's LMS
    against fixed-loading SMI and the known-covariance bound, on a linear
    array with three jammers.
``run_quad_pattern``
    Trial-averaged beampatterns of quadratic-constraint LMS, Frost LMS and
    unconstrained NLMS after training on data containing the target.

Every trial draws from its own generator seeded by
``derive_seed(base_seed, scenario, N, sweep, trial)``.  Trials are grouped
into fixed-size chunks that a process pool may run in any order; per-trial
results land in slots indexed by trial, so the averages do not depend on the
number of workers.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from ..adaptive import frost_init, frost_lclms_step, lms_init, nlms_step, quad_init, quad_lms_step
from ..covariance import sample_covariance
from ..linalg import solve_hermitian
from ..loading import optimize_loading
from ..metrics import PatternGrid, pattern_power, db, sinr_linear
from ..signal_model import (
    ClutterMode,
    ClutterModel,
    Target,
    clutter_covariance,
    coloring_factor,
    derive_seed,
    generate_training_set,
    spatial_steering,
    temporal_steering,
)
from ..solvers import Algorithm
from .config import ScenarioKind

__all__ = [
    "CurvePoint",
    "trial_seed",
    "reg_aut_context",
    "reg_aut_trial",
    "quad_learn_context",
    "quad_learn_trial",
    "quad_pattern_context",
    "quad_pattern_trial",
    "run_reg_aut",
    "run_quad_learn",
    "run_quad_pattern",
    "run_scenario",
]

log = logging.getLogger(__name__)

CHUNK = 25

REG_AUT_ALGORITHMS = (Algorithm.OPTIMAL, Algorithm.RSMI, Algorithm.RSMI_OPT)
QUAD_LEARN_ALGORITHMS = (Algorithm.OPTIMAL, Algorithm.RSMI, Algorithm.QUAD_LMS, Algorithm.FROST_LMS)
QUAD_PATTERN_ALGORITHMS = (Algorithm.FROST_LMS, Algorithm.QUAD_LMS, Algorithm.LMS)


@dataclass(frozen=True)
class CurvePoint:
    """Trial-averaged output SINR of one algorithm at one sweep point."""

    algorithm: str
    n: int
    m: int
    sir_db: float
    sinr_out_db: float
    trials: int

    def __post_init__(self):
        if not np.isfinite(self.sinr_out_db):
            raise ValueError("mean output SINR must be finite")


def trial_seed(cfg, n, sweep, trial):
    """Seed of one trial; independent of SIR so every SIR sees the same draws."""
    return derive_seed(cfg.base_seed, cfg.pipeline.value, int(n), int(sweep), int(trial))


def _run_trials(fn, trials, workers):
    """Evaluate ``fn(trial)`` for every trial and stack the results in trial order."""
    chunks = [range(i, min(i + CHUNK, trials)) for i in range(0, trials, CHUNK)]
    job = partial(_chunk, fn)
    if workers is None or workers <= 1 or len(chunks) == 1:
        parts = [job(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, chunks))
    return np.concatenate(parts, axis=0)


def _chunk(fn, trial_range):
    return np.stack([fn(t) for t in trial_range])


# -- loaded SMI on a pulse train ----------------------------------------------

@dataclass(frozen=True)
class RegAutContext:
    cfg: object
    n: int
    m: int
    sweep: int
    sir_db: float
    model: ClutterModel
    factor: np.ndarray
    r_true: np.ndarray
    s: np.ndarray
    target: object
    w_opt: np.ndarray


def reg_aut_context(cfg, n, sweep, sir_db):
    """Everything shared by the trials of one ``(N, M, SIR)`` point."""
    ratio = cfg.m_ratios[sweep]
    m = max(1, int(round(ratio * n)))
    modes = tuple(
        ClutterMode(frac, center_freq=f, spectral_width=w)
        for f, w, frac in zip(cfg.clutter_freqs, cfg.clutter_widths, cfg.clutter_fractions)
    )
    model = ClutterModel(modes, cfg.interference_power(sir_db), cfg.noise_power, n, cfg.prf)
    rc = clutter_covariance(model)
    r_true = rc + cfg.noise_power * np.eye(n)
    steer = temporal_steering(n, cfg.target_doppler, cfg.prf)
    s = np.sqrt(cfg.signal_power) * steer
    target = Target(steer, cfg.signal_power, cfg.target_law) if cfg.contaminate else None
    return RegAutContext(cfg, n, m, sweep, sir_db, model, coloring_factor(rc), r_true, s, target,
                         solve_hermitian(r_true, s))


def reg_aut_trial(ctx, trial):
    """Linear output SINR of (known covariance, fixed loading, optimized loading)."""
    cfg = ctx.cfg
    x = generate_training_set(ctx.model, ctx.m, ctx.target,
                              seed=trial_seed(cfg, ctx.n, ctx.sweep, trial), factor=ctx.factor)
    est = sample_covariance(x)
    sn = cfg.noise_power
    w_fixed = solve_hermitian(est.loaded(cfg.baseline_loading_multiplier * sn), ctx.s)
    _, w_opt_alpha, _ = optimize_loading(est, ctx.s, sn, cfg.iterations_T,
                                         alpha0=cfg.alpha0_multiplier * sn)
    return np.array([sinr_linear(w, ctx.s, ctx.r_true)
                     for w in (ctx.w_opt, w_fixed, w_opt_alpha.values)])


def run_reg_aut(cfg, workers=1):
    """Mean output SINR over trials for every ``(N, M, SIR)`` and algorithm.

    Points are ordered by SIR, then ``N``, then ``M``; within a point the
    algorithms come in the order OPTIMAL, RSMI, RSMI_OPT.
    """
    if cfg.pipeline is not ScenarioKind.REG_AUT:
        raise ValueError("configuration is not a REG_AUT scenario")
    rows = []
    for sir in cfg.sir_db_values:
        for n in cfg.n_values:
            for sweep in range(len(cfg.m_ratios)):
                ctx = reg_aut_context(cfg, n, sweep, sir)
                vals = _run_trials(partial(reg_aut_trial, ctx), cfg.trials, workers)
                means = db(vals.mean(axis=0))
                for alg, v in zip(REG_AUT_ALGORITHMS, means):
                    rows.append(CurvePoint(alg.value, n, ctx.m, float(sir), float(v), cfg.trials))
                log.info("reg-aut N=%d M=%d SIR=%g: %s", n, ctx.m, sir, np.round(means, 2))
    return rows


# -- constrained LMS on a linear array ----------------------------------------

@dataclass(frozen=True)
class ArrayContext:
    cfg: object
    n: int
    sir_db: float
    model: ClutterModel
    factor: object
    r_true: np.ndarray
    steer: np.ndarray
    s: np.ndarray
    target: object
    w_opt: np.ndarray


def _array_context(cfg, n, sir_db, with_target):
    k = len(cfg.jammer_angles)
    modes = tuple(ClutterMode(1.0 / k, angle=a) for a in cfg.jammer_angles)
    model = ClutterModel(modes, cfg.interference_power(sir_db), cfg.noise_power, n,
                         amplitude_law=cfg.jammer_law)
    rc = clutter_covariance(model)
    r_true = rc + cfg.noise_power * np.eye(n)
    steer = spatial_steering(n, cfg.target_angle)
    s = np.sqrt(cfg.signal_power) * steer
    target = Target(steer, cfg.signal_power, cfg.target_law) if with_target else None
    factor = coloring_factor(rc) if cfg.jammer_law == "gaussian" else None
    return ArrayContext(cfg, n, sir_db, model, factor, r_true, steer, s, target,
                        solve_hermitian(r_true, s))


def _frost_state(ctx):
    cfg = ctx.cfg
    if cfg.frost_start == "unit":
        return frost_init(ctx.steer, cfg.mu0, w0=ctx.steer / np.linalg.norm(ctx.steer))
    return frost_init(ctx.steer, cfg.mu0)


def quad_learn_context(cfg, n, sir_db):
    return _array_context(cfg, n, sir_db, cfg.contaminate)


def quad_learn_trial(ctx, trial, on_step=None):
    """Linear SINR at each checkpoint for OPTIMAL, RSMI, QUAD_LMS and FROST_LMS.

    The adaptive states carry over from one checkpoint to the next, so the
    curve is a single learning run sampled at the ``m_values``.  ``on_step``
    (if given) is called as ``on_step(algorithm, state, index)`` after every
    update.
    """
    cfg = ctx.cfg
    checkpoints = cfg.m_values
    x = generate_training_set(ctx.model, checkpoints[-1], ctx.target,
                              seed=trial_seed(cfg, ctx.n, 0, trial), factor=ctx.factor).snapshots
    quad = quad_init(ctx.s, cfg.mu0)
    frost = _frost_state(ctx)
    gain = cfg.constraint_gain(ctx.n)
    loading = cfg.baseline_loading_multiplier * cfg.noise_power
    out = np.empty((len(QUAD_LEARN_ALGORITHMS), len(checkpoints)))
    start = 0
    for i, m in enumerate(checkpoints):
        for j in range(start, m):
            quad = quad_lms_step(quad, x[:, j], constraint_gain=gain)
            frost = frost_lclms_step(frost, x[:, j])
            if on_step is not None:
                on_step(Algorithm.QUAD_LMS, quad, j)
                on_step(Algorithm.FROST_LMS, frost, j)
        start = m
        w_rsmi = solve_hermitian(sample_covariance(x[:, :m]).loaded(loading), ctx.s)
        out[:, i] = [sinr_linear(w, ctx.s, ctx.r_true)
                     for w in (ctx.w_opt, w_rsmi, quad.w, frost.w)]
    return out


def run_quad_learn(cfg, workers=1):
    """Learning curves; points ordered by ``N``, SIR, algorithm, then ``M``."""
    if cfg.pipeline is not ScenarioKind.QUAD_LEARN:
        raise ValueError("configuration is not a QUAD_LEARN scenario")
    rows = []
    for n in cfg.n_values:
        for sir in cfg.sir_db_values:
            ctx = quad_learn_context(cfg, n, sir)
            vals = _run_trials(partial(quad_learn_trial, ctx), cfg.trials, workers)
            means = db(vals.mean(axis=0))
            for alg, curve in zip(QUAD_LEARN_ALGORITHMS, means):
                for m, v in zip(cfg.m_values, curve):
                    rows.append(CurvePoint(alg.value, n, m, float(sir), float(v), cfg.trials))
            log.info("quad-learn N=%d SIR=%g final: %s", n, sir, np.round(means[:, -1], 2))
    return rows


def quad_pattern_context(cfg, n=None, sir_db=None):
    n = cfg.n_values[0] if n is None else n
    sir_db = cfg.sir_db_values[0] if sir_db is None else sir_db
    return _array_context(cfg, n, sir_db, cfg.contaminate)


def quad_pattern_trial(ctx, trial):
    """Linear power patterns (FROST_LMS, QUAD_LMS, LMS) after one training run.

    The quadratic-constraint weights are renormalized after each update; the
    unconstrained canceller is NLMS started at the look direction and also
    renormalized, so it cannot collapse to zero.
    """
    cfg = ctx.cfg
    m = cfg.m_values[-1]
    x = generate_training_set(ctx.model, m, ctx.target,
                              seed=trial_seed(cfg, ctx.n, 0, trial), factor=ctx.factor).snapshots
    quad = quad_init(ctx.s, cfg.mu0)
    frost = _frost_state(ctx)
    lms = lms_init(ctx.n, cfg.lms_mu0, w0=ctx.steer / np.linalg.norm(ctx.steer))
    gain = cfg.constraint_gain(ctx.n)
    for j in range(m):
        xj = x[:, j]
        quad = quad_lms_step(quad, xj, normalize=True, constraint_gain=gain)
        frost = frost_lclms_step(frost, xj)
        lms = nlms_step(lms, xj, normalize=True)
    return np.stack([pattern_power(w, cfg.grid_size, "gain")[1] for w in (frost.w, quad.w, lms.w)])


def run_quad_pattern(cfg, workers=1):
    """Trial-averaged beampatterns keyed by algorithm name (``FROST_LMS``, ``QUAD_LMS``, ``LMS``)."""
    if cfg.pipeline is not ScenarioKind.QUAD_PATTERN:
        raise ValueError("configuration is not a QUAD_PATTERN scenario")
    ctx = quad_pattern_context(cfg)
    vals = _run_trials(partial(quad_pattern_trial, ctx), cfg.trials, workers)
    angles = pattern_power(np.ones(ctx.n), cfg.grid_size)[0]
    with np.errstate(divide="ignore"):
        gains = db(vals.mean(axis=0))
    return {alg.value: PatternGrid(angles, g) for alg, g in zip(QUAD_PATTERN_ALGORITHMS, gains)}


def run_scenario(cfg, workers=1):
    """Dispatch on the configuration's pipeline."""
    runner = {
        ScenarioKind.REG_AUT: run_reg_aut,
        ScenarioKind.QUAD_LEARN: run_quad_learn,
        ScenarioKind.QUAD_PATTERN: run_quad_pattern,
    }[cfg.pipeline]
    return runner(cfg, workers=workers)
