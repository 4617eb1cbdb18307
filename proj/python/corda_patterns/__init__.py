"""Pattern formation by oblivious robots under full asynchrony."""

import json

from ._core import (
    CordaError,
    compute,
    elect_leader,
    generate_scenario,
    is_critical,
    matches_pattern,
    smallest_enclosing_circle,
)
from ._core import run_scenario as _run_scenario

__all__ = [
    "CordaError",
    "compute",
    "elect_leader",
    "generate_scenario",
    "is_critical",
    "matches_pattern",
    "run",
    "smallest_enclosing_circle",
]


def run(scenario, with_trace=False):
    """Run a scenario given as a dict or JSON text.

    Returns the summary dict, with the trace events (if requested) under
    "events" and the last robot positions under "final".
    """
    text = scenario if isinstance(scenario, str) else json.dumps(scenario)
    out = _run_scenario(text, with_trace)
    summary = json.loads(out["summary"])
    summary["final"] = [tuple(p) for p in out["final"]]
    if with_trace:
        summary["events"] = [json.loads(line) for line in out["trace"].splitlines()]
    return summary
