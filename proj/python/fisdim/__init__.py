"""Fractal interpolation surfaces and box-dimension bounds."""

import json

from ._fisdim import (
    ConfigError,
    FisdimError,
    ParseError,
    System,
    eval_expr,
    load_config,
    parse_config,
)

__all__ = [
    "ConfigError",
    "FisdimError",
    "ParseError",
    "System",
    "dimension_report",
    "eval_expr",
    "load_config",
    "parse_config",
]


def dimension_report(system, **kwargs):
    """Run the full pipeline and return the report as a dict."""
    return json.loads(system.dimension_report_json(**kwargs))
