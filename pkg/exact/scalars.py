"""Helpers shared by Rational and QuadExt scalars."""
from fractions import Fraction

from exact.quadext import QuadExt, quadext_sign
from exact.rational import format_rational, parse_rational


def sign(value):
    if isinstance(value, QuadExt):
        return quadext_sign(value)
    return (value > 0) - (value < 0)


def absolute(value):
    return -value if sign(value) < 0 else value


def approximate(value, k):
    if isinstance(value, QuadExt):
        return value.approximate(k)
    return Fraction(value)


def scalar_to_json(value):
    if isinstance(value, QuadExt):
        if value.is_rational:
            return format_rational(value.a)
        return value.to_json()
    return format_rational(value)


def scalar_from_json(data):
    if isinstance(data, dict):
        return QuadExt.from_json(data)
    return parse_rational(data)


def simplify(value):
    """Collapse QuadExt values with b = 0 back to plain rationals."""
    if isinstance(value, QuadExt) and value.is_rational:
        return value.a
    return value
