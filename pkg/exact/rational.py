"""Canonical rationals and their "p/q" wire format."""
from fractions import Fraction
from numbers import Rational as RationalNumber

from exact.exceptions import RationalFormatError, ZeroDenominatorError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat_normalize(n, d):
    """Return n/d in canonical form: gcd 1, positive denominator."""
    if d == 0:
        raise ZeroDenominatorError(f"zero denominator in {n}/{d}")
    return Fraction(n, d)


def as_rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, RationalNumber)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise RationalFormatError(f"not an exact rational: {value!r}")


def parse_rational(text):
    """Parse "p/q", "p" or a finite decimal literal such as "-0.75"."""
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        raise RationalFormatError(f"expected a rational string, got {text!r}")
    cleaned = text.strip()
    if '/' in cleaned:
        numerator, _, denominator = cleaned.partition('/')
        try:
            n, d = int(numerator), int(denominator)
        except ValueError:
            raise RationalFormatError(f"malformed rational {text!r}") from None
        return rat_normalize(n, d)
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise RationalFormatError(f"malformed rational {text!r}") from None


def format_rational(value):
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_vector(values):
    return [parse_rational(v) for v in values]


def parse_matrix(rows):
    return [parse_vector(row) for row in rows]


def format_vector(values):
    return [format_rational(v) for v in values]


def format_matrix(rows):
    return [format_vector(row) for row in rows]


def parse_complex(value):
    """A rational, or an object {"re": ..., "im": ...}, as a (re, im) pair."""
    if isinstance(value, dict):
        unknown = sorted(set(value) - {'re', 'im'})
        if unknown:
            raise RationalFormatError(f"unexpected complex keys {unknown}")
        return as_rational(value.get('re', 0)), as_rational(value.get('im', 0))
    return as_rational(value), Fraction(0)


def format_complex(re, im):
    return {'re': format_rational(re), 'im': format_rational(im)}


def dyadic(k):
    """2^{-k} as an exact rational (k may be negative)."""
    if k >= 0:
        return Fraction(1, 1 << k)
    return Fraction(1 << -k)


def floor_dyadic(value, bits):
    """Largest multiple of 2^{-bits} not above value."""
    scaled = value * (1 << bits)
    return Fraction(scaled.numerator // scaled.denominator, 1 << bits)


def ceil_dyadic(value, bits):
    scaled = value * (1 << bits)
    return Fraction(-((-scaled.numerator) // scaled.denominator), 1 << bits)
