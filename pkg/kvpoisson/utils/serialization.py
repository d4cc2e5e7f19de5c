"""Utilities for turning reports into JSON documents."""

import json
import os
from dataclasses import is_dataclass
from fractions import Fraction

import numpy as np


def format_rational(value):
    """Lowest-terms ``p/q`` text; integers print without ``/1``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def convert_types(obj):
    """
    Recursively convert exact and numpy types to JSON-safe Python types.

    Args:
        obj: dict, list, tuple, numpy array, Fraction or scalar

    Returns:
        Object with Fractions as ``p/q`` strings, numpy containers as lists and
        objects with a ``to_dict`` method expanded
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [convert_types(item) for item in obj.tolist()]
    if hasattr(obj, "to_dict"):
        return convert_types(obj.to_dict())
    if is_dataclass(obj):
        return convert_types(vars(obj))
    if isinstance(obj, dict):
        return {str(k): convert_types(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [convert_types(item) for item in obj]
    return obj


def dumps(report):
    """Deterministic JSON text of a report."""
    return json.dumps(convert_types(report), indent=2, ensure_ascii=False) + "\n"


def save_report(report, output_file):
    """Write a report as JSON, creating the parent directory if needed."""
    os.makedirs(os.path.dirname(os.path.abspath(output_file)), exist_ok=True)
    with open(output_file, "w", encoding="utf-8") as f:
        f.write(dumps(report))


def load_report(report_file):
    """Load a JSON report, or None if it is missing or unreadable."""
    try:
        with open(report_file, "r", encoding="utf-8") as f:
            return json.load(f)
    except (FileNotFoundError, UnicodeDecodeError, json.JSONDecodeError):
        return None
