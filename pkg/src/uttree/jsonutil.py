"""JSON output helpers shared by the CLI and the HTTP service."""

from __future__ import annotations

JSON_FLOAT_DECIMALS = 12


def round_floats(value, ndigits: int = JSON_FLOAT_DECIMALS):
    """Round every float in a JSON-ish structure so output diffs stay stable."""
    if isinstance(value, float):
        return round(value, ndigits)
    if isinstance(value, dict):
        return {key: round_floats(item, ndigits) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(item, ndigits) for item in value]
    return value
