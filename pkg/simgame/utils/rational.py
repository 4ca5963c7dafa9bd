import re
import logging
import numbers
import decimal
from fractions import Fraction

import numpy as np

_literal = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parses an integer or ``p/q`` literal into a Fraction in lowest terms.

    Parameters
    ----------
    text : str
        The literal, e.g. ``"3/6"`` or ``"-100"``.

    Returns
    -------
    Fraction
        The exact value.

    Raises
    ------
    ValueError
        If the literal is malformed or the denominator is zero.
    """
    match = _literal.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in rational literal {text!r}")
    return Fraction(numerator, denominator)


def to_rational(value) -> Fraction:
    """Converts ints, Fractions and rational literals to Fraction.

    Floats are rejected, they have no place in exact computations.
    """
    if isinstance(value, (bool, np.bool_)):
        raise TypeError(f"booleans are not rational numbers: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    logging.error(f"Cannot convert {value!r} of type {type(value).__name__} to an exact rational!")
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational: {value!r}")


def format_rational(value) -> str:
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def approximate(value, digits=6) -> str:
    """Decimal display string with ``digits`` significant digits, rounded half-even."""
    value = to_rational(value)
    context = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    result = context.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    return format(result, "f")
