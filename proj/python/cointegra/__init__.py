"""Unit roots, cointegration and long-run estimation for annual macro series."""

import json
import os
from pathlib import Path

from ._core import (
    ConfigError,
    DataError,
    Error,
    NumericalError,
    __version__,
    adf,
    diagnostics,
    dols,
    johansen,
    lag_selection,
    newey_west_variance,
    ols,
    pp,
    simulate_quantiles,
    za,
)


def _csv_files(paths):
    out = []
    for p in map(Path, paths):
        out.extend(sorted(p.glob("*.csv")) if p.is_dir() else [p])
    return [str(p) for p in out]


def run_pipeline(data, config=None):
    """Run every table on CSV files or directories; returns the report as a dict."""
    if isinstance(data, (str, os.PathLike)):
        data = [data]
    text = _core.run_pipeline_json(_csv_files(data), json.dumps(config) if config else "")
    return json.loads(text)


from . import _core  # noqa: E402

__all__ = [
    "ConfigError",
    "DataError",
    "Error",
    "NumericalError",
    "adf",
    "diagnostics",
    "dols",
    "johansen",
    "lag_selection",
    "newey_west_variance",
    "ols",
    "pp",
    "run_pipeline",
    "simulate_quantiles",
    "za",
]
