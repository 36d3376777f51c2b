# Copyright cgnf developers.  See LICENSE file for details.

"""
The ``cgnf`` command line: run configuration, sub-commands and reports.
"""

from ._config import (
    ConfigurationError, RunConfig, DEFAULT_SEEDS, parse_run_config,
    load_run_config, model_path,
)
from ._report import (
    spread, metrics_document, ace_document, cace_frame, histogram_frame,
    advisability_frame, mean_outcome_frame, worlds_frame,
    strategies_document, write_json, write_csv,
)

__all__ = [
    "ConfigurationError", "RunConfig", "DEFAULT_SEEDS", "parse_run_config",
    "load_run_config", "model_path", "spread", "metrics_document",
    "ace_document", "cace_frame", "histogram_frame", "advisability_frame",
    "mean_outcome_frame", "worlds_frame", "strategies_document",
    "write_json", "write_csv",
]
