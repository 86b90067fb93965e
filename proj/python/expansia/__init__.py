"""Bounded certificates for expansive group actions.

Rationals travel as exact "p/q" strings; the helpers here turn them into Fractions.
"""

import json
from fractions import Fraction

from ._core import (
    Scenario,
    ScenarioError,
    VersionMismatch,
    __version__,
    certify_linear,
    constant_from_cover,
    decide_finite,
    estimate_sup_constant,
    falsify_expansive,
    fixed_points,
    is_hyperbolic,
    task_names,
    verify_cover,
)
from ._core import replay as _replay
from ._core import run_task as _run_task

__all__ = [
    "Scenario",
    "ScenarioError",
    "VersionMismatch",
    "certify_linear",
    "constant_from_cover",
    "decide_finite",
    "estimate_sup_constant",
    "falsify_expansive",
    "fixed_points",
    "is_hyperbolic",
    "fraction",
    "replay",
    "run",
    "task_names",
    "verify_cover",
]


def fraction(text):
    """Fraction from a "p/q" string."""
    return Fraction(text)


def run(task, scenario, *, depth=None, grid=None, seed=None):
    """Run a task; returns (exit code, list of report dicts)."""
    if isinstance(scenario, str):
        scenario = Scenario.parse(scenario)
    code, lines = _run_task(task, scenario, depth=depth, grid=grid, seed=seed)
    return code, [json.loads(line) for line in lines]


def replay(reports):
    """Re-validate reports given as dicts or JSON strings; returns (ok, field, message)."""
    lines = [r if isinstance(r, str) else json.dumps(r) for r in reports]
    return _replay(lines)
