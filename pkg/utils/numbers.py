"""
Number handling shared by the circle, measure and output code.

Exact values are fractions.Fraction; anything else is treated as a float and
snapped with config.SNAP_TOLERANCE.
"""
import math
from fractions import Fraction
from typing import Union

import config

Number = Union[Fraction, float]


def parse_number(value) -> Number:
    """
    Parse a config value into an exact or float number.

    Strings ("1/2", "0.25") and ints become Fractions; JSON floats stay floats
    so irrational parameters (e.g. 0.6180339887498949) keep float semantics.
    """
    if isinstance(value, bool):
        raise ValueError(f"Expected a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return value
    raise ValueError(f"Expected a number, got {value!r}")


def is_exact(*values) -> bool:
    """True when every value is a Fraction or int."""
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def mod1(x: Number) -> Number:
    """Reduce a circle coordinate into [0, 1)."""
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return x - math.floor(x)
    r = float(x) % 1.0
    if r < config.SNAP_TOLERANCE or 1.0 - r < config.SNAP_TOLERANCE:
        return 0.0
    return r


def format_number(x, digits: int = None) -> str:
    """Locale-free fixed significant digits ('.' decimal)."""
    digits = digits or config.OUTPUT_SIGNIFICANT_DIGITS
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    value = float(x)
    if value == 0.0:
        return "0"
    return f"{value:.{digits}g}"


def rounded(x, digits: int = None) -> float:
    """Float rounded to the output precision, for JSON reports."""
    return float(format_number(x, digits))
