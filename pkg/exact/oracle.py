"""Precision-indexed rational representations of real numbers.

A RealOracle answers query(k) with a rational r_k such that
|r_k - x| <= 2^{-k} for the represented real x. Many different oracles
represent the same x; SignPattern makes the choice among them explicit and
deterministic.
"""
import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from exact.interval import DyadicInterval
from exact.rational import as_rational, dyadic


@dataclass(frozen=True)
class SignPattern:
    """Deterministic sign sequence sigma_k in {-1, 0, +1}."""

    kind: str
    value: int = 0
    seed: int = 0
    coordinate: int = 0

    def __post_init__(self):
        if self.value not in (-1, 0, 1):
            raise ValueError(f"sign pattern value must be -1, 0 or 1, got {self.value!r}")

    @classmethod
    def zero(cls):
        return cls('zero')

    @classmethod
    def constant(cls, value):
        return cls('constant', value=value)

    @classmethod
    def alternating(cls, start=1):
        return cls('alternating', value=start)

    @classmethod
    def coordinate_alternating(cls, start=1):
        return cls('coordinate', value=start)

    @classmethod
    def seeded(cls, seed):
        return cls('seeded', seed=seed)

    @property
    def is_zero(self):
        return self.kind == 'zero' or (self.kind in ('constant', 'alternating', 'coordinate') and self.value == 0)

    def for_coordinate(self, index):
        return SignPattern(self.kind, self.value, self.seed, self.coordinate + index)

    def sign(self, k):
        if self.kind == 'zero':
            return 0
        if self.kind == 'constant':
            return self.value
        if self.kind == 'alternating':
            return self.value if k % 2 == 0 else -self.value
        if self.kind == 'coordinate':
            return self.value if self.coordinate % 2 == 0 else -self.value
        if self.kind == 'seeded':
            digest = hashlib.blake2b(f"{self.seed}:{self.coordinate}:{k}".encode(), digest_size=1).digest()
            return digest[0] % 3 - 1
        raise ValueError(f"unknown sign pattern kind {self.kind!r}")

    def describe(self):
        if self.kind == 'seeded':
            return f"seeded:{self.seed}"
        if self.kind == 'zero':
            return 'zero'
        return f"{self.kind}:{self.value:+d}"


@dataclass(frozen=True)
class RealOracle:
    query: Callable[[int], Fraction]
    # Set only for constant representations of a rational.
    exact: Optional[Fraction] = field(default=None)
    label: str = ''

    def __call__(self, k):
        return self.query(k)

    def enclosure(self, k):
        """An interval that contains the represented real."""
        if self.exact is not None:
            return DyadicInterval.point(self.exact)
        return DyadicInterval.around(self.query(k), dyadic(k))


def oracle_from_rational(q):
    q = as_rational(q)

    def query(k):
        return q

    return RealOracle(query=query, exact=q, label=f"const:{q}")


def oracle_perturbed(q, pattern):
    """r_k = q + sigma_k * 2^{-(k+1)}, a valid representation of q."""
    q = as_rational(q)
    if pattern.is_zero:
        return oracle_from_rational(q)

    def query(k):
        return q + pattern.sign(k) * dyadic(k + 1)

    return RealOracle(query=query, label=f"{pattern.describe()}:{q}")
