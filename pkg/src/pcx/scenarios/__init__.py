from .loader import (
    CHECK_KINDS,
    SCHEMA,
    Scenario,
    ScenarioError,
    builtin_names,
    builtin_path,
    load_scenario,
    parse_scenario,
)
from .runner import ScenarioReport, run_check, run_scenario

__all__ = [
    "CHECK_KINDS",
    "SCHEMA",
    "Scenario",
    "ScenarioError",
    "ScenarioReport",
    "builtin_names",
    "builtin_path",
    "load_scenario",
    "parse_scenario",
    "run_check",
    "run_scenario",
]
