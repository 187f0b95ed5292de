"""Recursive dictionary merge for layering CLI overrides onto config documents."""
from typing import Dict, Any


def deep_merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Merge overrides into base, returning a new dict without mutating inputs.

    Override values of None mean "not given" and leave the base value in place.
    """
    result = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(result.get(key), dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result
