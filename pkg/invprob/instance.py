"""Inverse problem instances y = A x + e with their BP or lasso parameter.

Complex data is stored through the real embedding: A = B + iC acting on
x = u + iv becomes [[B, -C], [C, B]] acting on (u, v), and y = (Re y, Im y).
"""
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from exact.exceptions import RationalFormatError
from exact.linalg import column, matvec, squared_norm, vec_sub
from exact.rational import format_complex, format_matrix, format_rational, format_vector, parse_complex, \
    parse_rational, parse_vector
from invprob.exceptions import InstanceFormatError


def embed_complex(A_re, A_im, y_re, y_im):
    """Real form of the complex system (A_re + i A_im) x = y_re + i y_im."""
    top = [list(re) + [-v for v in im] for re, im in zip(A_re, A_im)]
    bottom = [list(im) + list(re) for re, im in zip(A_re, A_im)]
    return top + bottom, list(y_re) + list(y_im)


def split_complex(values):
    """(Re x, Im x) stacked in one real vector, back to (re, im) pairs."""
    values = list(values)
    half = len(values) // 2
    return list(zip(values[:half], values[half:]))


def _parse_field(field, parse):
    try:
        return parse()
    except (TypeError, RationalFormatError) as exc:
        raise InstanceFormatError(field, str(exc)) from None


def _has_complex_entries(data):
    def complex_in(values):
        return isinstance(values, list) and any(isinstance(v, dict) for v in values)

    rows = data['A'] if isinstance(data['A'], list) else []
    return any(complex_in(row) for row in rows) or complex_in(data['y']) or complex_in(data.get('noise'))


@dataclass(frozen=True)
class Instance:
    A: Tuple[tuple, ...]
    y: tuple
    epsilon: Optional[Fraction] = None
    lam: Optional[Fraction] = None
    noise: Optional[tuple] = None
    # (m, N) of the complex system when A and y hold its real embedding
    complex_shape: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if not self.A or not self.A[0]:
            raise InstanceFormatError('A', "matrix must be non-empty")
        if any(len(row) != len(self.A[0]) for row in self.A):
            raise InstanceFormatError('A', "rows must have equal length")
        if len(self.y) != self.m:
            raise InstanceFormatError('y', f"expected {self.m} entries, got {len(self.y)}")
        if not self.m < self.N:
            raise InstanceFormatError('A', f"need m < N, got m={self.m}, N={self.N}")
        if self.N < 2:
            raise InstanceFormatError('A', "need N >= 2")
        if (self.epsilon is None) == (self.lam is None):
            raise InstanceFormatError('epsilon', "exactly one of epsilon and lambda must be given")
        if self.epsilon is not None and self.epsilon <= 0:
            raise InstanceFormatError('epsilon', "must be positive")
        if self.lam is not None and self.lam <= 0:
            raise InstanceFormatError('lambda', "must be positive")
        if self.noise is not None and len(self.noise) != self.m:
            raise InstanceFormatError('noise', f"expected {self.m} entries")
        if self.complex_shape is not None:
            m, N = self.complex_shape
            if (2 * m, 2 * N) != (self.m, self.N):
                raise InstanceFormatError('A', f"embedding of a {m}x{N} complex system must be {2 * m}x{2 * N}")

    @property
    def m(self):
        return len(self.A)

    @property
    def N(self):
        return len(self.A[0])

    @property
    def is_complex(self):
        return self.complex_shape is not None

    @property
    def columns(self):
        return [column(self.A, j) for j in range(self.N)]

    def require_real(self, problem):
        if self.is_complex:
            raise InstanceFormatError('A', f"complex entries are only supported by bpa, not {problem}")

    @classmethod
    def build(cls, A, y, epsilon=None, lam=None, noise=None, complex_shape=None):
        return cls(
            A=tuple(tuple(Fraction(v) for v in row) for row in A),
            y=tuple(Fraction(v) for v in y),
            epsilon=None if epsilon is None else Fraction(epsilon),
            lam=None if lam is None else Fraction(lam),
            noise=None if noise is None else tuple(Fraction(v) for v in noise),
            complex_shape=complex_shape,
        )

    @classmethod
    def build_complex(cls, A, y, epsilon=None, lam=None, noise=None):
        """A, y (and noise) given as (re, im) pairs."""
        A_re = [[re for re, _ in row] for row in A]
        A_im = [[im for _, im in row] for row in A]
        real_A, real_y = embed_complex(A_re, A_im, [re for re, _ in y], [im for _, im in y])
        if noise is not None:
            noise = [re for re, _ in noise] + [im for _, im in noise]
        shape = (len(A), len(A[0]) if A else 0)
        return cls.build(real_A, real_y, epsilon=epsilon, lam=lam, noise=noise, complex_shape=shape)

    def residual(self, x):
        return vec_sub(matvec(self.A, x), self.y)

    def residual_squared(self, x):
        return squared_norm(self.residual(x))

    def flatten(self):
        """Row-major A followed by y: the data a representation is given for."""
        return [v for row in self.A for v in row] + list(self.y)

    @classmethod
    def from_flat(cls, values, m, N, epsilon=None, lam=None):
        values = list(values)
        A = [values[i * N:(i + 1) * N] for i in range(m)]
        return cls.build(A, values[m * N:m * N + m], epsilon=epsilon, lam=lam)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InstanceFormatError('json', f"malformed JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise InstanceFormatError('json', "instance must be an object")
        for field in ('A', 'y'):
            if field not in data:
                raise InstanceFormatError(field, "missing")
        complex_data = _has_complex_entries(data)
        parse_entries = (lambda values: [parse_complex(v) for v in values]) if complex_data else parse_vector
        A = _parse_field('A', lambda: [parse_entries(row) for row in data['A']])
        y = _parse_field('y', lambda: parse_entries(data['y']))
        params = {}
        for field, key in (('epsilon', 'epsilon'), ('lambda', 'lam')):
            if field in data:
                params[key] = _parse_field(field, lambda: parse_rational(data[field]))
        noise = None
        if 'noise' in data:
            noise = _parse_field('noise', lambda: parse_entries(data['noise']))
        if complex_data:
            if not A or any(len(row) != len(A[0]) for row in A):
                raise InstanceFormatError('A', "rows must have equal length")
            return cls.build_complex(A, y, noise=noise, **params)
        return cls.build(A, y, noise=noise, **params)

    def to_json(self):
        if self.is_complex:
            m, N = self.complex_shape
            data = {
                'A': [[format_complex(self.A[i][j], self.A[m + i][j]) for j in range(N)] for i in range(m)],
                'y': [format_complex(re, im) for re, im in split_complex(self.y)],
            }
        else:
            data = {'A': format_matrix(self.A), 'y': format_vector(self.y)}
        if self.epsilon is not None:
            data['epsilon'] = format_rational(self.epsilon)
        if self.lam is not None:
            data['lambda'] = format_rational(self.lam)
        if self.noise is not None and self.is_complex:
            data['noise'] = [format_complex(re, im) for re, im in split_complex(self.noise)]
        elif self.noise is not None:
            data['noise'] = format_vector(self.noise)
        return data


def random_rational(rng, bound=2, max_den=16):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_instance(rng, m, N, epsilon=None, lam=None, sparsity=None, noise_scale=None):
    """Random instance with entries uniform rationals in [-2, 2], denominators <= 16.

    With ``sparsity`` the data is generated as y = A x0 + e from a sparse x0
    and the noise vector is recorded.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    A = [[random_rational(rng) for _ in range(N)] for _ in range(m)]
    if sparsity is None:
        return Instance.build(A, [random_rational(rng) for _ in range(m)], epsilon=epsilon, lam=lam)
    support = rng.sample(range(N), sparsity)
    x0 = [random_rational(rng) if j in support else Fraction(0) for j in range(N)]
    scale = Fraction(noise_scale or 0)
    noise = [scale * random_rational(rng, bound=1) for _ in range(m)]
    y = [a + e for a, e in zip(matvec(A, x0), noise)]
    return Instance.build(A, y, epsilon=epsilon, lam=lam, noise=noise)
