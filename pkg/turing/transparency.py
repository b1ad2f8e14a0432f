"""Transparency checking: does a candidate's output depend only on the input?

The candidate is run on several valid representations of the same real
vector. Two correct 2^{-k}-accurate answers for the same input differ by at
most 2 * 2^{-k}; a larger gap certifies that the candidate does not realize
any single-valued function at that input. Consistency on finitely many
variants is evidence, never a proof.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from django.conf import settings

from bss.exceptions import BssError
from exact.exceptions import ExactArithmeticError
from exact.oracle import SignPattern, oracle_perturbed
from exact.rational import as_rational, dyadic, format_rational, format_vector
from invprob.exceptions import InverseProblemError
from neural.exceptions import NetworkError
from turing.effective import evaluate_effective
from turing.exceptions import EffectiveEvaluationError, TransparencyCheckError

logger = logging.getLogger(__name__)

CONSISTENT = 'consistent'
VIOLATION = 'violation'

# a candidate failing with any of these on one variant is recorded, not raised
CANDIDATE_ERRORS = (
    EffectiveEvaluationError,
    ExactArithmeticError,
    ArithmeticError,
    NetworkError,
    BssError,
    InverseProblemError,
)


def consistency_tolerance(k):
    return 2 * dyadic(k)


def variant_patterns(count, seed=0):
    """Deterministic representation variants; the first is the constant one."""
    base = [
        SignPattern.zero(),
        SignPattern.constant(1),
        SignPattern.constant(-1),
        SignPattern.coordinate_alternating(1),
        SignPattern.coordinate_alternating(-1),
        SignPattern.alternating(1),
    ]
    patterns = base[:count]
    index = 0
    while len(patterns) < count:
        patterns.append(SignPattern.seeded(seed + index))
        index += 1
    return patterns


def representation(x, pattern):
    return [oracle_perturbed(value, pattern.for_coordinate(i)) for i, value in enumerate(x)]


def max_distance(u, v):
    return max((abs(a - b) for a, b in zip(u, v)), default=Fraction(0))


@dataclass
class VariantOutcome:
    variant: int
    pattern: str
    outputs: Optional[List[Fraction]] = None
    error: Optional[str] = None

    def to_json(self):
        data = {'variant': self.variant, 'pattern': self.pattern}
        if self.error is not None:
            data['error'] = self.error
        else:
            data['output'] = format_vector(self.outputs)
        return data


@dataclass
class TransparencyReport:
    input: List[Fraction]
    precision: int
    outcomes: List[VariantOutcome]
    verdict: str
    witness: Optional[dict] = None
    candidate: str = ''
    metrics: dict = field(default_factory=dict)

    @property
    def is_violation(self):
        return self.verdict == VIOLATION

    def to_json(self):
        return {
            'candidate': self.candidate,
            'input': format_vector(self.input),
            'precision': self.precision,
            'outputs': [outcome.to_json() for outcome in self.outcomes],
            'verdict': self.verdict,
            'witness': self.witness,
        }


def _run_variant(candidate, x, pattern, k, budget):
    try:
        outputs = evaluate_effective(candidate, representation(x, pattern), k, budget=budget)
    except CANDIDATE_ERRORS as exc:
        return None, f"{type(exc).__name__}: {exc}"
    return outputs, None


def check_transparency(candidate, x, variants, k, budget=None, max_workers=None):
    if len(variants) < 2:
        raise TransparencyCheckError("at least two representation variants are required")
    x = [as_rational(v) for v in x]
    max_workers = settings.WORKBENCH_MAX_WORKERS if max_workers is None else max_workers

    def run(pattern):
        return _run_variant(candidate, x, pattern, k, budget)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(run, variants))
    else:
        results = [run(pattern) for pattern in variants]

    outcomes = [
        VariantOutcome(variant=i, pattern=pattern.describe(), outputs=outputs, error=error)
        for i, (pattern, (outputs, error)) in enumerate(zip(variants, results))
    ]

    tolerance = consistency_tolerance(k)
    witness = None
    widest = Fraction(-1)
    largest = Fraction(0)
    succeeded = [o for o in outcomes if o.error is None]
    for i, first in enumerate(succeeded):
        for second in succeeded[i + 1:]:
            distance = max_distance(first.outputs, second.outputs)
            largest = max(largest, distance)
            if distance > tolerance and distance > widest:
                widest = distance
                witness = {'variants': [first.variant, second.variant], 'distance': format_rational(distance)}
    if witness is None:
        failed = next((o for o in outcomes if o.error is not None), None)
        if failed is not None:
            witness = {'variants': [failed.variant], 'reason': failed.error}

    verdict = VIOLATION if witness is not None else CONSISTENT
    logger.info("Transparency check of %s at precision %s over %s variants: %s",
                candidate.name or 'candidate', k, len(variants), verdict)
    return TransparencyReport(
        input=x,
        precision=k,
        outcomes=outcomes,
        verdict=verdict,
        witness=witness,
        candidate=candidate.name,
        metrics={'max_distance': largest, 'tolerance': tolerance},
    )
