"""Monte-Carlo experiment runner: configurations, scenarios, result files and the CLI."""
from .config import RunSettings, ScenarioConfig, ScenarioKind, default_config, load_config, parse_config
from .io import emit_csv, emit_pattern_csv, emit_plot, write_curves, write_patterns
from .scenarios import CurvePoint, run_quad_learn, run_quad_pattern, run_reg_aut, run_scenario

__all__ = [
    "RunSettings",
    "ScenarioConfig",
    "ScenarioKind",
    "default_config",
    "load_config",
    "parse_config",
    "emit_csv",
    "emit_pattern_csv",
    "emit_plot",
    "write_curves",
    "write_patterns",
    "CurvePoint",
    "run_reg_aut",
    "run_quad_learn",
    "run_quad_pattern",
    "run_scenario",
]
