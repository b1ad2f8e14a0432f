"""Solver outputs: minimizer, objective, certificate and path summary."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from exact.interval import DyadicInterval
from exact.quadext import QuadExt
from exact.scalars import scalar_to_json

OPTIMAL = 'optimal'
BUDGET = 'budget'
TRIVIAL = 'trivial'


def _metadata_to_json(value):
    if isinstance(value, (Fraction, QuadExt)):
        return scalar_to_json(value)
    return value


def _value_to_json(value):
    if isinstance(value, DyadicInterval):
        return value.to_json()
    return scalar_to_json(value)


@dataclass
class KktCertificate:
    valid: bool
    problem: str
    multiplier: object = None
    reason: str = ''
    index: Optional[int] = None
    correlations: list = field(default_factory=list)

    def __bool__(self):
        return self.valid

    def to_json(self):
        data = {'problem': self.problem, 'valid': self.valid}
        if self.multiplier is not None:
            data['multiplier'] = scalar_to_json(self.multiplier)
        if not self.valid:
            data['reason'] = self.reason
            data['index'] = self.index
        if self.correlations:
            data['correlations'] = [scalar_to_json(c) for c in self.correlations]
        return data


@dataclass(frozen=True)
class Breakpoint:
    lam: object
    event: str
    index: Optional[int]
    support: tuple

    def to_json(self):
        return {
            'lambda': scalar_to_json(self.lam),
            'event': self.event,
            'index': self.index,
            'support': list(self.support),
        }


@dataclass
class SolveResult:
    problem: str
    minimizer: list
    objective: object
    certificate: object
    breakpoints: List[Breakpoint] = field(default_factory=list)
    status: str = OPTIMAL
    metadata: dict = field(default_factory=dict)

    @property
    def certified(self):
        if isinstance(self.certificate, KktCertificate):
            return self.certificate.valid
        return bool(self.certificate.get('valid'))

    @property
    def support(self):
        return tuple(i for i, value in enumerate(self.minimizer)
                     if not isinstance(value, DyadicInterval) and value != 0)

    def to_json(self):
        certificate = self.certificate
        if isinstance(certificate, KktCertificate):
            certificate = certificate.to_json()
        metadata = {key: _metadata_to_json(value) for key, value in self.metadata.items()}
        return {
            'problem': self.problem,
            'status': self.status,
            'minimizer': [_value_to_json(v) for v in self.minimizer],
            'objective': _value_to_json(self.objective),
            'certificate': certificate,
            'breakpoints': [b.to_json() for b in self.breakpoints],
            'metadata': metadata,
        }
