"""Compile ReLU networks into BSS programs."""
from fractions import Fraction

from bss.exceptions import CompileError
from bss.program import Constant, ProgramBuilder

ZERO = Constant(Fraction(0))


def _constant(value, location):
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise CompileError(f"{location}: parameter {value!r} is not rational")
    return Constant(Fraction(value))


def compile_relu_net(net):
    """Program computing the network exactly; two nodes per non-zero weight."""
    if net.activation != 'relu':
        raise CompileError(f"unsupported activation {net.activation!r}")
    builder = ProgramBuilder()
    builder.input(net.input_dim)
    current = list(range(net.input_dim))
    scratch = net.input_dim
    next_register = scratch + 1
    last = len(net.layers) - 1
    for depth, layer in enumerate(net.layers):
        outputs = []
        for row_index, (row, bias) in enumerate(zip(layer.weights, layer.bias)):
            location = f"layers[{depth}]"
            accumulator = next_register
            next_register += 1
            builder.compute(accumulator, '+', _constant(bias, f"{location}.b[{row_index}]"), ZERO)
            for column, weight in enumerate(row):
                weight = _constant(weight, f"{location}.W[{row_index}][{column}]")
                if weight.value == 0:
                    continue
                builder.compute(scratch, '*', weight, current[column])
                builder.compute(accumulator, '+', accumulator, scratch)
            if depth != last:
                here = builder.position
                builder.branch(accumulator, '<0', here + 1, here + 2)
                builder.compute(accumulator, '*', ZERO, ZERO)
            outputs.append(accumulator)
        current = outputs
    builder.output(current)
    return builder.build()
