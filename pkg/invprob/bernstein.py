"""Bernstein polynomial approximation of the l1 norm.

p(x) = sum_i q(x_i), where q is the degree-n Bernstein polynomial of |t| on
[-R, R] with R >= sqrt(N) * beta. After the change of variable
t = R * (2u - 1), f(u) = R * |2u - 1| has Lipschitz constant 2R and
|B_n f(u) - f(u)| <= 2R * E|K/n - u| <= 2R * sqrt(u(1 - u)/n) <= R/sqrt(n),
so n = ceil((N * R / gamma)^2) gives an error of at most gamma/N per
coordinate and gamma overall on the ball ||x||_2 <= sqrt(N) * beta.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor, isqrt
from typing import Optional

from django.conf import settings
from mpmath.libmp import (fone, from_int, from_rational, fzero, mpf_add, mpf_div, mpf_mul, round_ceiling,
                          round_floor, to_rational)

from exact.interval import DyadicInterval
from exact.rational import as_rational, dyadic, format_rational
from invprob.exceptions import BernsteinDegreeError

logger = logging.getLogger(__name__)

# Point evaluations up to this degree are exact integer sums.
EXACT_DEGREE = 256

RADIUS_BITS = 10


def radius_upper_bound(dimension, beta):
    """Rational R >= sqrt(dimension) * beta, exact when dimension is a square."""
    beta = as_rational(beta)
    root = isqrt(dimension)
    if root * root == dimension:
        return root * beta
    scaled = dimension << (2 * RADIUS_BITS)
    root = isqrt(scaled)
    if root * root < scaled:
        root += 1
    return Fraction(root, 1 << RADIUS_BITS) * beta


def _power(base, exponent, prec, rnd):
    result = fone
    while exponent:
        if exponent & 1:
            result = mpf_mul(result, base, prec, rnd)
        exponent >>= 1
        if exponent:
            base = mpf_mul(base, base, prec, rnd)
    return result


def _raw(value, prec, rnd):
    return from_rational(value.numerator, value.denominator, prec, rnd)


@dataclass(frozen=True)
class BernsteinApprox:
    dimension: int
    degree: int
    beta: Fraction
    radius: Fraction
    gamma: Optional[Fraction] = None
    enclosure_bits: int = 64
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def of_degree(cls, degree, dimension=1, beta=1, gamma=None, enclosure_bits=None):
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        beta = as_rational(beta)
        return cls(
            dimension=dimension,
            degree=degree,
            beta=beta,
            radius=radius_upper_bound(dimension, beta),
            gamma=None if gamma is None else as_rational(gamma),
            enclosure_bits=settings.WORKBENCH_BERNSTEIN_ENCLOSURE_BITS if enclosure_bits is None
            else enclosure_bits,
        )

    def coefficient(self, k):
        """f(k/n) = R * |2k - n| / n."""
        return self.radius * Fraction(abs(2 * k - self.degree), self.degree)

    @property
    def error_bound_squared(self):
        """Square of the per-coordinate bound R / sqrt(n)."""
        return self.radius * self.radius / self.degree

    def unit(self, t):
        return (as_rational(t) + self.radius) / (2 * self.radius)

    def evaluate_coordinate(self, t):
        """q(t) exactly, as a single integer sum over a common denominator."""
        u = self.unit(t)
        n, a, b = self.degree, u.numerator, u.denominator
        c = b - a
        c_powers = [1] * (n + 1)
        for j in range(1, n + 1):
            c_powers[j] = c_powers[j - 1] * c
        total, a_power, binomial = 0, 1, 1
        for k in range(n + 1):
            total += abs(2 * k - n) * binomial * a_power * c_powers[n - k]
            a_power *= a
            binomial = binomial * (n - k) // (k + 1)
        return self.radius * Fraction(total, n * b ** n)

    def evaluate(self, x):
        return sum((self.evaluate_coordinate(value) for value in x), Fraction(0))

    def enclose_point(self, t):
        """Outward-rounded enclosure of q(t)."""
        t = as_rational(t)
        box = self._cache.get(t)
        if box is None:
            u = self.unit(t)
            if self.degree <= EXACT_DEGREE or u <= 0 or u >= 1:
                box = DyadicInterval.point(self.evaluate_coordinate(t))
            else:
                box = self._windowed_enclosure(u)
            self._cache[t] = box
        return box

    def _windowed_enclosure(self, u):
        # Binomial mass with |K - n u| > delta is below 2 exp(-2 delta^2 / n),
        # and every coefficient is at most R.
        n, bits = self.degree, self.enclosure_bits
        prec = bits + 2 * n.bit_length() + 16
        delta = isqrt(n * (bits + 2) * 7 // 20) + 1
        centre = n * u
        k_lo = max(0, floor(centre) - delta)
        k_hi = min(n, ceil(centre) + delta)
        lower = self._window_sum(u, k_lo, k_hi, prec, round_floor)
        upper = self._window_sum(u, k_lo, k_hi, prec, round_ceiling)
        tail = 2 * self.radius * dyadic(bits + 2)
        return DyadicInterval(lower, upper + tail).round_outward(bits)

    def _window_sum(self, u, k_lo, k_hi, prec, rnd):
        """Sum of f_k b_{n,k}(u) over the window, every rounding towards ``rnd``."""
        n = self.degree
        against = round_floor if rnd is round_ceiling else round_ceiling
        w = 1 - u
        u_raw, w_raw = _raw(u, prec, rnd), _raw(w, prec, rnd)
        ratio = mpf_div(u_raw, _raw(w, prec, against), prec, rnd)
        term = mpf_mul(_power(u_raw, k_lo, prec, rnd), _power(w_raw, n - k_lo, prec, rnd), prec, rnd)
        term = mpf_mul(term, from_int(comb(n, k_lo), prec, rnd), prec, rnd)
        total = fzero
        for k in range(k_lo, k_hi + 1):
            weight = _raw(self.coefficient(k), prec, rnd)
            total = mpf_add(total, mpf_mul(weight, term, prec, rnd), prec, rnd)
            if k < k_hi:
                term = mpf_mul(term, from_rational(n - k, k + 1, prec, rnd), prec, rnd)
                term = mpf_mul(term, ratio, prec, rnd)
        p, q = to_rational(total)
        return Fraction(p, q)

    def enclose_coordinate(self, box):
        """Range of q over an interval, using that q is even and convex."""
        left, right = self.enclose_point(box.lo), self.enclose_point(box.hi)
        if box.lo <= 0 <= box.hi:
            low = self.enclose_point(0).lo
        elif box.lo > 0:
            low = left.lo
        else:
            low = right.lo
        return DyadicInterval(low, max(left.hi, right.hi))

    def enclose(self, boxes):
        total = DyadicInterval.point(0)
        for box in boxes:
            total = total + self.enclose_coordinate(box)
        return total

    def enclose_at(self, x):
        total = DyadicInterval.point(0)
        for value in x:
            total = total + self.enclose_point(value)
        return total

    def lipschitz_bound(self):
        """Lipschitz constant of q on [-R, R] from consecutive coefficient differences."""
        n = self.degree
        steepest = max(abs(self.coefficient(k + 1) - self.coefficient(k)) for k in range(n))
        return n * steepest / (2 * self.radius)

    def grid_errors(self, step):
        """(t, q(t) - |t|) on a grid of [0, R]; q is even, so this covers [-R, R]."""
        step = as_rational(step)
        rows, t = [], Fraction(0)
        while t < self.radius:
            rows.append((t, self.evaluate_coordinate(t) - t))
            t += step
        rows.append((self.radius, self.evaluate_coordinate(self.radius) - self.radius))
        return rows

    def grid_sup_error(self, step):
        return max(abs(error) for _, error in self.grid_errors(step))

    def grid_certificate(self, step=None):
        step = dyadic(12) if step is None else as_rational(step)
        measured = self.grid_sup_error(step)
        lipschitz = self.lipschitz_bound()
        padding = step * (1 + lipschitz)
        bound = measured + padding
        target = None if self.gamma is None else self.gamma / self.dimension
        return {
            'degree': self.degree,
            'step': format_rational(step),
            'grid_sup_error': format_rational(measured),
            'lipschitz': format_rational(lipschitz),
            'padding': format_rational(padding),
            'bound': format_rational(bound),
            'target': None if target is None else format_rational(target),
            'certified': target is not None and bound <= target,
        }

    def to_json(self):
        return {
            'dimension': self.dimension,
            'degree': self.degree,
            'beta': format_rational(self.beta),
            'gamma': None if self.gamma is None else format_rational(self.gamma),
            'radius': format_rational(self.radius),
            'error_bound_squared': format_rational(self.error_bound_squared),
        }


def required_degree(dimension, beta, gamma):
    radius = radius_upper_bound(dimension, beta)
    share = as_rational(gamma) / dimension
    return max(1, ceil((radius / share) ** 2))


def build_bernstein_l1(N, beta, gamma, degree_cap=None):
    beta, gamma = as_rational(beta), as_rational(gamma)
    if N < 1:
        raise ValueError(f"dimension must be positive, got {N}")
    if beta <= 0 or gamma <= 0:
        raise ValueError("beta and gamma must be positive")
    cap = settings.WORKBENCH_BERNSTEIN_DEGREE_CAP if degree_cap is None else degree_cap
    degree = required_degree(N, beta, gamma)
    if degree > cap:
        raise BernsteinDegreeError(degree, cap)
    logger.info("Bernstein approximation of |t| for N=%s, beta=%s, gamma=%s: degree %s", N, beta, gamma, degree)
    return BernsteinApprox.of_degree(degree, dimension=N, beta=beta, gamma=gamma)
