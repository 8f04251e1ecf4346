"""Python bindings for the radiology worklist triage simulator."""

from ._core import (
    DEFAULT_MAX_WAIT,
    FINDINGS,
    ConfigError,
    DataError,
    TriageError,
    binormal_tpr,
    fit_binormal,
    run_comparison,
    run_simulation,
    run_sweep,
    summarize,
    urgency_of,
    welch_t_test,
)

__all__ = [
    "DEFAULT_MAX_WAIT",
    "FINDINGS",
    "ConfigError",
    "DataError",
    "TriageError",
    "binormal_tpr",
    "fit_binormal",
    "run_comparison",
    "run_simulation",
    "run_sweep",
    "summarize",
    "urgency_of",
    "welch_t_test",
]
