"""Exact interpreter for BSS programs over rationals (or one quadratic field)."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List

from django.conf import settings

from bss.exceptions import BssRuntimeError, InputArityError, NonTerminationError
from bss.program import BranchNode, ComputeNode, Constant, InputNode
from exact.scalars import scalar_from_json, scalar_to_json, sign

logger = logging.getLogger(__name__)


@dataclass
class BssState:
    registers: Dict[int, object] = field(default_factory=dict)
    pc: int = 0
    steps: int = 0


@dataclass(frozen=True)
class TraceStep:
    node: int
    delta: Dict[int, object]


@dataclass
class Trace:
    steps: List[TraceStep] = field(default_factory=list)
    final_registers: Dict[int, object] = field(default_factory=dict)

    def replay(self, initial=None):
        registers = dict(initial or {})
        for step in self.steps:
            registers.update(step.delta)
        return registers

    def to_json(self):
        return {
            'steps': [
                {'node': step.node, 'delta': {str(r): scalar_to_json(v) for r, v in sorted(step.delta.items())}}
                for step in self.steps
            ],
            'final': {str(r): scalar_to_json(v) for r, v in sorted(self.final_registers.items())},
        }

    @classmethod
    def from_json(cls, data):
        steps = [
            TraceStep(node=item['node'], delta={int(r): scalar_from_json(v) for r, v in item['delta'].items()})
            for item in data['steps']
        ]
        final = {int(r): scalar_from_json(v) for r, v in data.get('final', {}).items()}
        return cls(steps=steps, final_registers=final)


def _value(state, operand):
    if isinstance(operand, Constant):
        return operand.value
    return state.registers[operand]


def _apply(node_id, op, left, right):
    if op == '+':
        return left + right
    if op == '-':
        return left - right
    if op == '*':
        return left * right
    if sign(right) == 0:
        raise BssRuntimeError(node_id, "division by zero")
    return left / right


def _holds(predicate, value):
    s = sign(value)
    if predicate == '<0':
        return s < 0
    if predicate == '=0':
        return s == 0
    return s > 0


def run(program, inputs, max_steps=None):
    """Run a program to its output node; returns (outputs, trace)."""
    max_steps = settings.WORKBENCH_BSS_MAX_STEPS if max_steps is None else max_steps
    inputs = list(inputs)
    if len(inputs) != program.input_count:
        raise InputArityError(f"program reads {program.input_count} inputs, got {len(inputs)}")
    state = BssState(pc=program.entry)
    trace = Trace()
    while True:
        if state.steps >= max_steps:
            logger.warning("BSS run stopped after %s steps", max_steps)
            raise NonTerminationError(max_steps)
        state.steps += 1
        node_id = state.pc
        node = program.nodes[node_id]
        if isinstance(node, InputNode):
            delta = dict(enumerate(inputs))
            state.registers.update(delta)
            trace.steps.append(TraceStep(node_id, delta))
            state.pc = node.next
        elif isinstance(node, ComputeNode):
            left, right = (_value(state, arg) for arg in node.args)
            result = _apply(node_id, node.op, left, right)
            state.registers[node.target] = result
            trace.steps.append(TraceStep(node_id, {node.target: result}))
            state.pc = node.next
        elif isinstance(node, BranchNode):
            taken = _holds(node.predicate, state.registers[node.register])
            trace.steps.append(TraceStep(node_id, {}))
            state.pc = node.if_true if taken else node.if_false
        else:
            trace.steps.append(TraceStep(node_id, {}))
            trace.final_registers = dict(state.registers)
            outputs = [state.registers[r] for r in node.registers]
            logger.debug("BSS run halted at node %s after %s steps", node_id, state.steps)
            return outputs, trace
