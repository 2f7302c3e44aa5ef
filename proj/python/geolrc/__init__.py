"""Locally recoverable codes from algebraic curves and surfaces."""

import json

from ._core import (
    Code,
    ConfigError,
    ConstructionError,
    Field,
    GeolrcError,
    build,
    builtin_ids,
    code_from_text,
    families,
    field,
    load_code,
    recover,
    reproduce,
    save_code,
)


def analyze(code, exact_budget=1 << 24, low_weight=4):
    """Report for a built code as a dict (keys as in the CLI JSON report)."""
    from ._core import analyze_json

    return json.loads(analyze_json(code, exact_budget, low_weight))


__all__ = [
    "Code",
    "ConfigError",
    "ConstructionError",
    "Field",
    "GeolrcError",
    "analyze",
    "build",
    "builtin_ids",
    "code_from_text",
    "families",
    "field",
    "load_code",
    "recover",
    "reproduce",
    "save_code",
]
