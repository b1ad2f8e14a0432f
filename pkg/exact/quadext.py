"""Exact arithmetic in a quadratic field Q(sqrt(d)).

A value a + b*sqrt(d) keeps its radicand d fixed; rationals embed with
b = 0 and combine with any radicand. Values over two different radicands
are never mixed.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from exact.exceptions import ExactArithmeticError, MixedRadicandError, ZeroDenominatorError
from exact.rational import ZERO, as_rational, format_rational, parse_rational

# Trial division bound used when extracting square factors from a radicand.
SQUARE_FACTOR_BOUND = 4096


def _is_square(n):
    if n < 0:
        return False
    root = isqrt(n)
    return root * root == n


def squarefree_split(n):
    """Split a positive integer as n = s^2 * d.

    Square factors of primes up to SQUARE_FACTOR_BOUND are extracted and a
    perfect-square cofactor is absorbed, so d is square-free unless it
    carries a repeated prime above the bound.
    """
    if n <= 0:
        raise ExactArithmeticError(f"radicand must be positive, got {n}")
    s, d = 1, 1
    p = 2
    while p <= SQUARE_FACTOR_BOUND and p * p <= n:
        if n % p == 0:
            exponent = 0
            while n % p == 0:
                n //= p
                exponent += 1
            s *= p ** (exponent // 2)
            if exponent % 2:
                d *= p
        p += 1 if p == 2 else 2
    if _is_square(n):
        s *= isqrt(n)
    else:
        d *= n
    return s, d


@dataclass(frozen=True)
class QuadExt:
    a: Fraction
    b: Fraction = ZERO
    d: int = 1

    def __post_init__(self):
        a, b, d = as_rational(self.a), as_rational(self.b), int(self.d)
        if d < 1:
            raise ExactArithmeticError(f"radicand must be a positive integer, got {self.d}")
        if b == 0:
            d = 1
        elif _is_square(d):
            a, b, d = a + b * isqrt(d), ZERO, 1
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'd', d)

    @property
    def is_rational(self):
        return self.b == 0

    def conjugate(self):
        return QuadExt(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.d

    def sign(self):
        return quadext_sign(self)

    def approximate(self, k):
        """Rational within 2^{-k} of the value."""
        if self.b == 0:
            return self.a
        magnitude = abs(self.b)
        bits = (magnitude.numerator // magnitude.denominator).bit_length() + 1
        scale = k + bits
        root = isqrt(self.d << (2 * scale))
        return self.a + self.b * Fraction(2 * root + 1, 1 << (scale + 1))

    def to_json(self):
        return {'a': format_rational(self.a), 'b': format_rational(self.b), 'd': self.d}

    @classmethod
    def from_json(cls, data):
        return cls(parse_rational(data['a']), parse_rational(data['b']), int(data['d']))

    def _radicand_with(self, other):
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise MixedRadicandError(self.d, other.d)

    def __add__(self, other):
        other = lift(other)
        return QuadExt(self.a + other.a, self.b + other.b, self._radicand_with(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-lift(other))

    def __rsub__(self, other):
        return lift(other) - self

    def __mul__(self, other):
        other = lift(other)
        d = self._radicand_with(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = lift(other)
        norm = other.norm()
        if norm == 0:
            raise ZeroDenominatorError(f"division by {other}")
        numerator = self * other.conjugate()
        return QuadExt(numerator.a / norm, numerator.b / norm, numerator.d)

    def __rtruediv__(self, other):
        return lift(other) / self

    def __abs__(self):
        return -self if quadext_sign(self) < 0 else self

    def __bool__(self):
        return quadext_sign(self) != 0

    def __eq__(self, other):
        if isinstance(other, (QuadExt, Fraction, int)):
            other = lift(other)
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return quadext_sign(self - other) < 0

    def __le__(self, other):
        return quadext_sign(self - other) <= 0

    def __gt__(self, other):
        return quadext_sign(self - other) > 0

    def __ge__(self, other):
        return quadext_sign(self - other) >= 0

    def __float__(self):
        return float(self.approximate(64))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def lift(value):
    if isinstance(value, QuadExt):
        return value
    return QuadExt(as_rational(value), ZERO, 1)


def _rational_sign(value):
    return (value > 0) - (value < 0)


def quadext_sign(v):
    """Exact sign of a + b*sqrt(d) from rational comparisons only."""
    sa, sb = _rational_sign(v.a), _rational_sign(v.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = v.a * v.a, v.b * v.b * v.d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def sqrt_rational(q):
    """sqrt(q) for a rational q >= 0, as an element of Q(sqrt(d))."""
    q = as_rational(q)
    if q < 0:
        raise ExactArithmeticError(f"square root of negative rational {q}")
    if q == 0:
        return QuadExt(ZERO)
    s, d = squarefree_split(q.numerator * q.denominator)
    return QuadExt(ZERO, Fraction(s, q.denominator), d)
