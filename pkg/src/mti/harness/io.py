"""
Result files
============

CSV tables of :class:`~mti.harness.scenarios.CurvePoint` rows and
beampatterns, plus optional SVG line charts (requires matplotlib).
"""
from __future__ import annotations

import csv
import logging
import os
from collections import OrderedDict

import numpy as np

__all__ = [
    "CURVE_HEADER",
    "format_sir",
    "emit_csv",
    "emit_pattern_csv",
    "emit_plot",
    "emit_pattern_plot",
    "write_curves",
    "write_patterns",
    "plotting_available",
]

log = logging.getLogger(__name__)

CURVE_HEADER = ("algorithm", "n", "m", "sir_db", "sinr_out_db", "trials")
PATTERN_HEADER = ("angle_deg", "gain_db")


def format_sir(sir):
    """``20.0 -> '20'``, ``-7.5 -> '-7.5'``; used in file names."""
    return f"{float(sir):g}"


def _fmt(x):
    return f"{float(x):.6f}"


def emit_csv(rows, path):
    """Write curve points with the header ``algorithm,n,m,sir_db,sinr_out_db,trials``."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(CURVE_HEADER)
        for r in rows:
            out.writerow([r.algorithm, r.n, r.m, format_sir(r.sir_db), _fmt(r.sinr_out_db), r.trials])
    return path


def emit_pattern_csv(pattern, path):
    """Write one beampattern as ``angle_deg,gain_db`` rows."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(PATTERN_HEADER)
        for a, g in zip(pattern.angles, pattern.gains_db):
            out.writerow([_fmt(a), _fmt(g) if np.isfinite(g) else "-inf"])
    return path


def plotting_available():
    try:
        import matplotlib  # noqa: F401
    except ImportError:
        return False
    return True


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "mti"
    return plt


def emit_plot(rows, path, x="n", title=None):
    """SVG line chart of output SINR against ``x`` (``'n'`` or ``'m'``), one line per algorithm.

    Returns the path, or None when matplotlib is not installed.
    """
    if not plotting_available():
        log.warning("matplotlib not installed; skipping %s", path)
        return None
    plt = _pyplot()
    series = OrderedDict()
    for r in rows:
        series.setdefault(r.algorithm, []).append((getattr(r, x), r.sinr_out_db))
    fig, ax = plt.subplots(figsize=(6, 4))
    for alg, pts in series.items():
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=alg)
    ax.set_xlabel("N" if x == "n" else "M")
    ax.set_ylabel("output SINR, dB")
    if x == "n":
        ax.set_xscale("log", base=2)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def emit_pattern_plot(patterns, path, title=None):
    """SVG of several beampatterns (``{name: PatternGrid}``) against angle."""
    if not plotting_available():
        log.warning("matplotlib not installed; skipping %s", path)
        return None
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    for name, p in patterns.items():
        ax.plot(p.angles, np.maximum(p.gains_db, -100.0), label=name, linewidth=0.8)
    ax.set_xlabel("angle, deg")
    ax.set_ylabel("gain, dB")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def write_curves(kind, rows, out_dir, plot=False):
    """Split rows into one CSV per figure and write them under ``out_dir``.

    Loaded-SMI runs give ``reg_aut_SIR<k>.csv``; learning curves give
    ``quad_learn_N<n>_SIR<k>.csv``.  Returns the list of written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    groups = OrderedDict()
    for r in rows:
        if kind == "REG_AUT":
            key = f"reg_aut_SIR{format_sir(r.sir_db)}"
        else:
            key = f"quad_learn_N{r.n}_SIR{format_sir(r.sir_db)}"
        groups.setdefault(key, []).append(r)
    written = []
    for key, group in groups.items():
        written.append(emit_csv(group, os.path.join(out_dir, key + ".csv")))
        if plot:
            x = "n" if kind == "REG_AUT" else "m"
            if kind == "REG_AUT":
                for m_tag in sorted({r.m / r.n for r in group}):
                    sub = [r for r in group if r.m / r.n == m_tag]
                    sub = [type(r)(f"{r.algorithm} M={m_tag:g}N", r.n, r.m, r.sir_db, r.sinr_out_db, r.trials)
                           for r in sub]
                    p = emit_plot(sub, os.path.join(out_dir, f"{key}_M{m_tag:g}N.svg"), x=x, title=key)
                    if p:
                        written.append(p)
            else:
                p = emit_plot(group, os.path.join(out_dir, key + ".svg"), x=x, title=key)
                if p:
                    written.append(p)
    return written


def write_patterns(patterns, out_dir, plot=False):
    """Write ``quad_pattern_<ALG>.csv`` per algorithm (and one SVG with all of them)."""
    os.makedirs(out_dir, exist_ok=True)
    written = [emit_pattern_csv(p, os.path.join(out_dir, f"quad_pattern_{name}.csv"))
               for name, p in patterns.items()]
    if plot:
        p = emit_pattern_plot(patterns, os.path.join(out_dir, "quad_pattern.svg"), title="beampatterns")
        if p:
            written.append(p)
    return written
