"""
Scenario configuration
======================

:class:`ScenarioConfig` collects every knob of a Monte-Carlo run.  Defaults
for each scenario kind come from :func:`default_config`; configuration files
are flat INI text with one section per scenario.
"""
from __future__ import annotations

import configparser
import dataclasses
import enum
import math
import re
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import ConfigError, ParseError

__all__ = [
    "ScenarioKind",
    "ScenarioConfig",
    "RunSettings",
    "default_config",
    "parse_config",
    "load_config",
]


class ScenarioKind(str, enum.Enum):
    REG_AUT = "REG_AUT"
    QUAD_LEARN = "QUAD_LEARN"
    QUAD_PATTERN = "QUAD_PATTERN"
    CUSTOM = "CUSTOM"


RUNNER_KINDS = (ScenarioKind.REG_AUT, ScenarioKind.QUAD_LEARN, ScenarioKind.QUAD_PATTERN)

LISTING_BASELINE_MULTIPLIER = 16.0
LISTING_ALPHA0_MULTIPLIER = 1.6


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one scenario.

    Powers are set in dB relative to 1: the noise power is
    ``10^(noise_level_db / 10)``, the signal sits ``snr_db`` above it and the
    total interference ``sir_db`` below the signal.

    ``m_ratios`` (snapshots per element) drive the loaded-SMI sweep;
    ``m_values`` are absolute snapshot counts for the other kinds.  For
    ``CUSTOM``, ``runner`` names the scenario kind whose pipeline is used.

    ``frost_start`` picks Frost's initial weights: ``unit`` is the unit-norm
    look direction used by the reference listings, ``quiescent`` the
    constraint-satisfying ``s / (s^H s)``.  The learning-speed gap between
    the two constrained LMS rules is largely an effect of this choice.
    """

    kind: ScenarioKind
    n_values: Tuple[int, ...]
    sir_db_values: Tuple[float, ...]
    m_values: Tuple[int, ...] = ()
    m_ratios: Tuple[float, ...] = ()
    snr_db: float = 10.0
    noise_level_db: float = -70.0
    contaminate: bool = False
    trials: int = 500
    iterations_T: int = 3
    mu0: float = 0.25
    lms_mu0: float = 0.5
    baseline_loading_multiplier: float = 10.0
    alpha0_multiplier: float = 1.0
    prf: float = 20_000.0
    clutter_freqs: Tuple[float, ...] = (0.0, 1003.0)
    clutter_widths: Tuple[float, ...] = (500.0, 500.0)
    clutter_fractions: Tuple[float, ...] = (0.5, 0.5)
    target_doppler: float = 4000.0
    jammer_angles: Tuple[float, ...] = (-14.0, 71.0, 66.0)
    target_angle: float = 0.0
    jammer_law: str = "gaussian"
    target_law: str = "rayleigh"
    quad_constraint_gain: Optional[float] = None
    frost_start: str = "unit"
    grid_size: int = 4096
    base_seed: int = 0
    runner: Optional[ScenarioKind] = None

    def __post_init__(self):
        kind = ScenarioKind(self.kind)
        object.__setattr__(self, "kind", kind)
        for name in ("n_values", "sir_db_values", "m_values", "m_ratios", "clutter_freqs",
                     "clutter_widths", "clutter_fractions", "jammer_angles"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.runner is not None:
            object.__setattr__(self, "runner", ScenarioKind(self.runner))
        if kind is ScenarioKind.CUSTOM:
            if self.runner not in RUNNER_KINDS:
                raise ConfigError("CUSTOM scenarios need runner = REG_AUT, QUAD_LEARN or QUAD_PATTERN")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.iterations_T < 1:
            raise ConfigError("iterations_T must be >= 1")
        if not self.n_values or not self.sir_db_values:
            raise ConfigError("n_values and sir_db_values must be non-empty")
        if any(n < 1 for n in self.n_values):
            raise ConfigError("n_values must be positive")
        pipeline = self.pipeline
        if pipeline is ScenarioKind.REG_AUT:
            if not self.m_ratios or any(r <= 0 for r in self.m_ratios):
                raise ConfigError("m_ratios must be non-empty and positive")
            if not (len(self.clutter_freqs) == len(self.clutter_widths) == len(self.clutter_fractions)):
                raise ConfigError("clutter_freqs, clutter_widths and clutter_fractions differ in length")
        else:
            if not self.m_values or any(m < 1 for m in self.m_values):
                raise ConfigError("m_values must be non-empty and positive")
            if list(self.m_values) != sorted(set(self.m_values)):
                raise ConfigError("m_values must be strictly increasing")
            if not self.jammer_angles:
                raise ConfigError("jammer_angles must be non-empty")
        if self.baseline_loading_multiplier <= 0 or self.alpha0_multiplier <= 0:
            raise ConfigError("loading multipliers must be positive")
        for name in ("mu0", "lms_mu0", "prf"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.frost_start not in ("unit", "quiescent"):
            raise ConfigError("frost_start must be 'unit' or 'quiescent'")
        if self.grid_size < 2 * max(self.n_values):
            raise ConfigError("grid_size must be at least twice the largest n")

    @property
    def pipeline(self):
        """Scenario kind whose runner executes this configuration."""
        return self.runner if self.kind is ScenarioKind.CUSTOM else self.kind

    @property
    def noise_power(self):
        return 10.0 ** (self.noise_level_db / 10.0)

    @property
    def signal_power(self):
        return 10.0 ** ((self.noise_level_db + self.snr_db) / 10.0)

    def interference_power(self, sir_db):
        return 10.0 ** ((self.noise_level_db + self.snr_db - sir_db) / 10.0)

    def constraint_gain(self, n):
        if self.quad_constraint_gain is not None:
            return self.quad_constraint_gain
        return math.sqrt(n) if self.pipeline is ScenarioKind.QUAD_PATTERN else 1.0

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def with_listing_compat(self):
        """Loading constants of the reference listings (16 sigma^2 baseline, 1.6 sigma^2 start)."""
        return self.replace(baseline_loading_multiplier=LISTING_BASELINE_MULTIPLIER,
                            alpha0_multiplier=LISTING_ALPHA0_MULTIPLIER)


_DEFAULTS = {
    ScenarioKind.REG_AUT: dict(
        n_values=(8, 16, 32, 64, 128),
        m_ratios=(0.5, 1.0),
        sir_db_values=(20, 10, 0, -10, -20, -40, -60, -80),
        noise_level_db=-70.0,
        trials=500,
        contaminate=False,
    ),
    ScenarioKind.QUAD_LEARN: dict(
        n_values=(256, 512, 1024),
        m_values=(8, 16, 32, 64, 96, 128, 192, 256),
        sir_db_values=(-60, -80),
        noise_level_db=-60.0,
        trials=100,
        jammer_law="rayleigh_coherent",
    ),
    ScenarioKind.QUAD_PATTERN: dict(
        n_values=(128,),
        m_values=(1024,),
        sir_db_values=(10,),
        noise_level_db=-60.0,
        trials=100,
        contaminate=True,
        jammer_law="rayleigh_coherent",
        target_law="coherent",
    ),
}


def default_config(kind, listing_compat=False, **overrides):
    """Default :class:`ScenarioConfig` for a scenario kind, with overrides applied."""
    kind = ScenarioKind(kind)
    if kind is ScenarioKind.CUSTOM:
        runner = overrides.get("runner")
        if runner is None or ScenarioKind(runner) not in RUNNER_KINDS:
            raise ConfigError("CUSTOM scenarios need runner = REG_AUT, QUAD_LEARN or QUAD_PATTERN")
        base = dict(_DEFAULTS[ScenarioKind(runner)])
    else:
        base = dict(_DEFAULTS[kind])
    if listing_compat:
        base.update(baseline_loading_multiplier=LISTING_BASELINE_MULTIPLIER,
                    alpha0_multiplier=LISTING_ALPHA0_MULTIPLIER)
    base.update(overrides)
    return ScenarioConfig(kind=kind, **base)


@dataclass(frozen=True)
class RunSettings:
    """Contents of the optional ``[run]`` section."""

    out: str = "out"
    plot: bool = False
    workers: int = 1
    listing_compat: bool = False


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _seq(conv):
    def parse(text):
        items = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        if not items:
            raise ValueError("empty list")
        return tuple(conv(p) for p in items)
    return parse


def _opt_float(text):
    return None if text.strip().lower() in ("", "none", "auto") else float(text)


_FIELD_PARSERS = {
    "kind": lambda t: ScenarioKind(t.strip().upper()),
    "runner": lambda t: ScenarioKind(t.strip().upper()),
    "n_values": _seq(int),
    "m_values": _seq(int),
    "m_ratios": _seq(float),
    "sir_db_values": _seq(float),
    "snr_db": float,
    "noise_level_db": float,
    "contaminate": _bool,
    "trials": int,
    "iterations_T": int,
    "mu0": float,
    "lms_mu0": float,
    "baseline_loading_multiplier": float,
    "alpha0_multiplier": float,
    "prf": float,
    "clutter_freqs": _seq(float),
    "clutter_widths": _seq(float),
    "clutter_fractions": _seq(float),
    "target_doppler": float,
    "jammer_angles": _seq(float),
    "target_angle": float,
    "jammer_law": str.strip,
    "target_law": str.strip,
    "quad_constraint_gain": _opt_float,
    "frost_start": lambda t: t.strip().lower(),
    "grid_size": int,
    "base_seed": int,
}

_RUN_PARSERS = {"out": str.strip, "plot": _bool, "workers": int, "listing_compat": _bool}

_SECTION_RE = re.compile(r"^\s*\[([^\]]+)\]")
_KEY_RE = re.compile(r"^\s*([^=:#;\s][^=:]*?)\s*[=:]")


def _line_index(text):
    """Map ``(section, key)`` and ``(section, None)`` to 1-based line numbers."""
    where = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _SECTION_RE.match(line)
        if m:
            section = m.group(1).strip()
            where.setdefault((section, None), lineno)
            continue
        m = _KEY_RE.match(line)
        if m and section is not None and not line[:1].isspace():
            where.setdefault((section, m.group(1).strip().lower()), lineno)
    return where


def parse_config(text):
    """Parse configuration text into ``(RunSettings, [(name, ScenarioConfig), ...])``.

    Every section other than ``[run]`` is a scenario and must set ``kind``;
    unset fields take the defaults of that kind.  Errors are reported as
    :class:`ParseError` with the offending line and field.
    """
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str.lower
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"malformed configuration: {exc.message if hasattr(exc, 'message') else exc}",
                         line=getattr(exc, "lineno", None)) from exc
    where = _line_index(text)
    lower_fields = {k.lower(): k for k in _FIELD_PARSERS}

    run_kwargs = {}
    if parser.has_section("run"):
        for key, raw in parser.items("run"):
            if key not in _RUN_PARSERS:
                raise ParseError("unknown key", line=where.get(("run", key)), field=key)
            try:
                run_kwargs[key] = _RUN_PARSERS[key](raw)
            except ValueError as exc:
                raise ParseError(f"bad value {raw!r}: {exc}", line=where.get(("run", key)), field=key) from exc
    settings = RunSettings(**run_kwargs)

    scenarios = []
    for section in parser.sections():
        if section == "run":
            continue
        items = dict(parser.items(section))
        if "kind" not in items:
            raise ParseError(f"section [{section}] lacks a required field",
                             line=where.get((section, None)), field="kind")
        values = {}
        for key, raw in items.items():
            name = lower_fields.get(key)
            line = where.get((section, key))
            if name is None:
                raise ParseError("unknown key", line=line, field=key)
            try:
                values[name] = _FIELD_PARSERS[name](raw)
            except ValueError as exc:
                raise ParseError(f"bad value {raw!r}: {exc}", line=line, field=name) from exc
        kind = values.pop("kind")
        if kind is ScenarioKind.CUSTOM and "runner" not in values:
            raise ParseError(f"section [{section}] lacks a required field",
                             line=where.get((section, None)), field="runner")
        try:
            cfg = default_config(kind, listing_compat=settings.listing_compat, **values)
        except ConfigError as exc:
            raise ParseError(str(exc), line=where.get((section, None))) from exc
        scenarios.append((section, cfg))
    if not scenarios:
        raise ParseError("no scenario sections found")
    return settings, scenarios


def load_config(path):
    """Read and parse a configuration file."""
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
