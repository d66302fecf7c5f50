"""Instrumented univariate EDA on LeadingOnes.

Thin wrapper over the compiled core: seeded simulator runs, closed-form
runtime-bound calculators, and the replicated sweep runner.
"""

from __future__ import annotations

import json

from ._core import (
    __version__,
    bound_report,
    chernoff_lower_tail,
    chernoff_upper_tail,
    conjectured_bound,
    d_lower,
    d_upper,
    default_sweep_config,
    drift_band_exit_bound,
    evaluate,
    lower_bound_iterations,
    run,
    sweep_summary,
    upper_bound_iterations,
    xi,
)

__all__ = [
    "__version__",
    "bound_report",
    "chernoff_lower_tail",
    "chernoff_upper_tail",
    "conjectured_bound",
    "d_lower",
    "d_upper",
    "default_sweep_config",
    "drift_band_exit_bound",
    "evaluate",
    "lower_bound_iterations",
    "run",
    "sweep",
    "sweep_summary",
    "upper_bound_iterations",
    "xi",
]


def sweep(config=None, workers: int = 0) -> dict:
    """Run a replicated sweep and return the parsed summary.

    ``config`` may be a dict, a JSON string, or ``None`` for the built-in
    grid. ``workers=0`` uses one worker per core; results are bitwise
    identical for every worker count.
    """
    if config is None:
        text = default_sweep_config()
    elif isinstance(config, str):
        text = config
    else:
        text = json.dumps(config)
    return json.loads(sweep_summary(text, workers))
