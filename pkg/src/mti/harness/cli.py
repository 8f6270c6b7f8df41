"""
Command-line entry point
========================

::

    mti scenario reg-aut|quad-learn|quad-pattern [--trials K] [--seed S] [--out DIR]
                 [--listing-compat] [--plot] [--workers W] [--n N ...] [--sir DB ...]
    mti run-config FILE

Exit status: 0 on success, 2 for configuration or file errors, 3 when a
numerical failure (non-positive-definite matrix, degenerate direction, ...)
aborts the run.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from ..errors import ConfigError, NumericError
from .config import ScenarioKind, default_config, load_config
from .io import write_curves, write_patterns
from .scenarios import run_scenario

__all__ = ["main", "execute"]

log = logging.getLogger("mti")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_SCENARIOS = {
    "reg-aut": ScenarioKind.REG_AUT,
    "quad-learn": ScenarioKind.QUAD_LEARN,
    "quad-pattern": ScenarioKind.QUAD_PATTERN,
}


def execute(cfg, out_dir, plot=False, workers=1):
    """Run one scenario and write its files; returns the written paths."""
    result = run_scenario(cfg, workers=workers)
    if cfg.pipeline is ScenarioKind.QUAD_PATTERN:
        return write_patterns(result, out_dir, plot=plot)
    return write_curves(cfg.pipeline.value, result, out_dir, plot=plot)


def _build_parser():
    p = argparse.ArgumentParser(prog="mti", description="Adaptive MTI Monte-Carlo experiments.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", help="run a built-in scenario with its defaults")
    sc.add_argument("name", choices=sorted(_SCENARIOS))
    sc.add_argument("--trials", type=int, help="Monte-Carlo trials per point")
    sc.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    sc.add_argument("--out", default="out", help="output directory (default ./out)")
    sc.add_argument("--listing-compat", action="store_true",
                    help="use the reference listings' loading constants (16 and 1.6 noise powers)")
    sc.add_argument("--plot", action="store_true", help="also write SVG charts")
    sc.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    sc.add_argument("--n", type=int, nargs="+", dest="n_values", help="override the N sweep")
    sc.add_argument("--sir", type=float, nargs="+", dest="sir_db_values", help="override the SIR sweep (dB)")
    sc.add_argument("--contaminate", type=int, choices=(0, 1), help="target present in training data")

    rc = sub.add_parser("run-config", help="run every scenario of a configuration file")
    rc.add_argument("file")
    return p


def _scenario(args):
    overrides = {"base_seed": args.seed}
    for name in ("trials", "n_values", "sir_db_values"):
        v = getattr(args, name)
        if v is not None:
            overrides[name] = v
    if args.contaminate is not None:
        overrides["contaminate"] = bool(args.contaminate)
    cfg = default_config(_SCENARIOS[args.name], listing_compat=args.listing_compat, **overrides)
    for path in execute(cfg, args.out, plot=args.plot, workers=args.workers):
        print(path)


def _run_config(args):
    settings, scenarios = load_config(args.file)
    many = len(scenarios) > 1
    for name, cfg in scenarios:
        out = os.path.join(settings.out, name) if many else settings.out
        for path in execute(cfg, out, plot=settings.plot, workers=settings.workers):
            print(path)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "scenario":
            _scenario(args)
        else:
            _run_config(args)
    except ConfigError as exc:
        print(f"mti: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"mti: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"mti: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
