"""Feedforward ReLU networks, evaluated exactly or effectively.

A network with layers (W_1, b_1), ..., (W_L, b_L) computes
T_L(relu(T_{L-1}(... relu(T_1 x)))) with T_l(z) = W_l z + b_l; no
activation follows the last layer.
"""
import json
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from exact.exceptions import RationalFormatError
from exact.oracle import RealOracle, SignPattern, oracle_perturbed
from exact.rational import ZERO, as_rational, format_vector, parse_complex, parse_vector
from exact.scalars import sign
from neural.exceptions import DimensionMismatch, NetworkFormatError
from turing.effective import refine_loop

logger = logging.getLogger(__name__)

ACTIVATIONS = ('relu',)


@dataclass(frozen=True)
class Layer:
    weights: Tuple[tuple, ...]
    bias: tuple

    @property
    def out_dim(self):
        return len(self.weights)

    @property
    def in_dim(self):
        return len(self.weights[0]) if self.weights else 0

    def parameters(self):
        for row in self.weights:
            yield from row
        yield from self.bias


def _check_shape(layers, activation):
    if activation not in ACTIVATIONS:
        raise NetworkFormatError(f"unsupported activation {activation!r}")
    if not layers:
        raise NetworkFormatError("a network needs at least one layer")
    for depth, layer in enumerate(layers):
        if layer.out_dim == 0 or layer.in_dim == 0:
            raise DimensionMismatch(f"layer {depth} is empty")
        if any(len(row) != layer.in_dim for row in layer.weights):
            raise DimensionMismatch(f"layer {depth} has ragged weight rows")
        if len(layer.bias) != layer.out_dim:
            raise DimensionMismatch(f"layer {depth}: bias has {len(layer.bias)} entries, expected {layer.out_dim}")
        if depth and layers[depth - 1].out_dim != layer.in_dim:
            raise DimensionMismatch(
                f"layer {depth} expects {layer.in_dim} inputs but layer {depth - 1} has {layers[depth - 1].out_dim}")


@dataclass(frozen=True)
class NeuralNet:
    layers: Tuple[Layer, ...]
    activation: str = 'relu'

    def __post_init__(self):
        _check_shape(self.layers, self.activation)

    @property
    def input_dim(self):
        return self.layers[0].in_dim

    @property
    def output_dim(self):
        return self.layers[-1].out_dim

    @classmethod
    def from_lists(cls, layers, activation='relu'):
        return cls(
            layers=tuple(
                Layer(weights=tuple(tuple(Fraction(w) for w in row) for row in weights),
                      bias=tuple(Fraction(b) for b in bias))
                for weights, bias in layers
            ),
            activation=activation,
        )

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise NetworkFormatError(f"malformed net JSON: {exc.msg}") from None
        try:
            layers = tuple(
                Layer(weights=tuple(tuple(parse_vector(row)) for row in layer['W']),
                      bias=tuple(parse_vector(layer['b'])))
                for layer in data['layers']
            )
        except (KeyError, TypeError) as exc:
            raise NetworkFormatError(f"net JSON is missing field {exc}") from None
        except RationalFormatError as exc:
            raise NetworkFormatError(str(exc)) from None
        return cls(layers=layers, activation=data.get('activation', 'relu'))

    def to_json(self):
        return {
            'layers': [{'W': [format_vector(row) for row in layer.weights], 'b': format_vector(layer.bias)}
                       for layer in self.layers],
            'activation': self.activation,
        }


@dataclass(frozen=True)
class OracleNet:
    """Same shape as NeuralNet with every parameter given by a RealOracle."""

    layers: Tuple[Layer, ...]
    activation: str = 'relu'

    def __post_init__(self):
        _check_shape(self.layers, self.activation)
        for layer in self.layers:
            if not all(isinstance(p, RealOracle) for p in layer.parameters()):
                raise NetworkFormatError("OracleNet parameters must be RealOracles")

    @property
    def input_dim(self):
        return self.layers[0].in_dim

    @classmethod
    def from_net(cls, net, pattern=None):
        pattern = pattern or SignPattern.zero()
        counter = iter(range(10 ** 9))
        layers = tuple(
            Layer(
                weights=tuple(tuple(oracle_perturbed(w, pattern.for_coordinate(next(counter))) for w in row)
                              for row in layer.weights),
                bias=tuple(oracle_perturbed(b, pattern.for_coordinate(next(counter))) for b in layer.bias),
            )
            for layer in net.layers
        )
        return cls(layers=layers, activation=net.activation)

    def parameters(self):
        return [p for layer in self.layers for p in layer.parameters()]


def _relu(value):
    return value if sign(value) > 0 else ZERO


def forward_exact(net, x):
    if len(x) != net.input_dim:
        raise DimensionMismatch(f"net expects {net.input_dim} inputs, got {len(x)}")
    values = list(x)
    last = len(net.layers) - 1
    for depth, layer in enumerate(net.layers):
        values = [sum((w * v for w, v in zip(row, values)), b) for row, b in zip(layer.weights, layer.bias)]
        if depth != last:
            values = [_relu(v) for v in values]
    return values


def stack_complex(values):
    """Complex inputs as one real vector: all real parts, then all imaginary parts.

    Entries are (re, im) pairs, {"re": ..., "im": ...} objects or plain rationals.
    """
    try:
        pairs = [tuple(as_rational(v) for v in value) if isinstance(value, tuple) else parse_complex(value)
                 for value in values]
    except RationalFormatError as exc:
        raise NetworkFormatError(f"complex input: {exc}") from None
    return [re for re, _ in pairs] + [im for _, im in pairs]


def forward_complex(net, z):
    """Evaluate a net that reads complex inputs through their real and imaginary parts."""
    x = stack_complex(z)
    if len(x) != net.input_dim:
        raise DimensionMismatch(f"net expects {net.input_dim} real inputs, got {len(z)} complex values")
    return forward_exact(net, x)


def _enclose_forward(net, boxes):
    """Interval forward pass; boxes holds the inputs followed by the parameters."""
    values = boxes[:net.input_dim]
    cursor = net.input_dim
    last = len(net.layers) - 1
    for depth, layer in enumerate(net.layers):
        weights = []
        for _ in range(layer.out_dim):
            weights.append(boxes[cursor:cursor + layer.in_dim])
            cursor += layer.in_dim
        bias = boxes[cursor:cursor + layer.out_dim]
        cursor += layer.out_dim
        outputs = []
        for row, b in zip(weights, bias):
            total = b
            for w, v in zip(row, values):
                total = total + w * v
            outputs.append(total.relu() if depth != last else total)
        values = outputs
    return values


def forward_effective(net, x, k, budget=None):
    """Output within 2^{-k} of the network value on the represented input."""
    if len(x) != net.input_dim:
        raise DimensionMismatch(f"net expects {net.input_dim} inputs, got {len(x)}")
    inputs = list(x) + net.parameters()
    return refine_loop(lambda boxes: _enclose_forward(net, boxes), inputs, k, budget=budget)


def random_relu_net(rng, input_dim, depth, width, max_den=8, bound=2):
    """Random net with rational parameters in [-bound, bound]."""
    if isinstance(rng, int):
        rng = random.Random(rng)

    def entry():
        den = rng.randint(1, max_den)
        return Fraction(rng.randint(-bound * den, bound * den), den)

    layers = []
    previous = input_dim
    for _ in range(depth):
        out_dim = rng.randint(1, width)
        layers.append(([[entry() for _ in range(previous)] for _ in range(out_dim)], [entry() for _ in range(out_dim)]))
        previous = out_dim
    return NeuralNet.from_lists(layers)
