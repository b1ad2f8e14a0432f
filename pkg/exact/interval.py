"""Closed intervals with exact rational endpoints.

Endpoints are rationals, so every operation returns the exact hull of the
pointwise results and no outward rounding step is ever needed.
"""
import operator
from dataclasses import dataclass
from fractions import Fraction

from exact.exceptions import ExactArithmeticError, PrecisionRefinementRequired
from exact.rational import ZERO, as_rational, ceil_dyadic, floor_dyadic, format_rational


@dataclass(frozen=True)
class DyadicInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ExactArithmeticError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @classmethod
    def point(cls, value):
        value = as_rational(value)
        return cls(value, value)

    @classmethod
    def around(cls, center, radius):
        center = as_rational(center)
        return cls(center - radius, center + radius)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self):
        return self.lo == self.hi

    def contains(self, value):
        if isinstance(value, DyadicInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def inflate(self, radius):
        return DyadicInterval(self.lo - radius, self.hi + radius)

    def hull(self, other):
        return DyadicInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def round_outward(self, bits):
        """Widen to endpoints on the 2^{-bits} grid."""
        return DyadicInterval(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits))

    def relu(self):
        return DyadicInterval(max(ZERO, self.lo), max(ZERO, self.hi))

    def square(self):
        lo2, hi2 = self.lo * self.lo, self.hi * self.hi
        if self.contains_zero():
            return DyadicInterval(ZERO, max(lo2, hi2))
        return DyadicInterval(min(lo2, hi2), max(lo2, hi2))

    def scale(self, factor):
        factor = as_rational(factor)
        a, b = self.lo * factor, self.hi * factor
        return DyadicInterval(min(a, b), max(a, b))

    def __add__(self, other):
        other = _coerce(other)
        return DyadicInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return DyadicInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise PrecisionRefinementRequired(other)
        return self * DyadicInterval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _coerce(value):
    if isinstance(value, DyadicInterval):
        return value
    return DyadicInterval.point(value)


_OPERATIONS = {
    '+': operator.add,
    '-': operator.sub,
    '−': operator.sub,
    '*': operator.mul,
    '×': operator.mul,
    '/': operator.truediv,
    '÷': operator.truediv,
}


def interval_op(op, a, b):
    """Apply one of + - * / (or their typographic forms) to two intervals."""
    try:
        function = _OPERATIONS[op]
    except KeyError:
        raise ExactArithmeticError(f"unknown interval operation {op!r}") from None
    return function(_coerce(a), _coerce(b))
