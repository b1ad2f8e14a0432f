"""BSS programs: finite graphs of input, compute, branch and output nodes.

Node ids are positions in the node list. Compute and input nodes fall
through to ``next`` (default: the following node). Branch nodes test the
sign of one register against zero; a general comparison a < b is written
as a sign test of a - b.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from bss.exceptions import ProgramIssue, ProgramParseError
from exact.exceptions import RationalFormatError
from exact.rational import format_rational, parse_rational

OPERATIONS = {'+': '+', '-': '-', '−': '-', '*': '*', '×': '*', '/': '/', '÷': '/'}
PREDICATES = ('<0', '=0', '>0')


@dataclass(frozen=True)
class Constant:
    value: Fraction


Operand = Union[int, Constant]


@dataclass(frozen=True)
class InputNode:
    count: int
    next: int


@dataclass(frozen=True)
class ComputeNode:
    target: int
    op: str
    args: Tuple[Operand, Operand]
    next: int

    @property
    def uses(self):
        return [arg for arg in self.args if isinstance(arg, int)]


@dataclass(frozen=True)
class BranchNode:
    register: int
    predicate: str
    if_true: int
    if_false: int


@dataclass(frozen=True)
class OutputNode:
    registers: Tuple[int, ...]


@dataclass(frozen=True)
class BssProgram:
    nodes: tuple
    entry: int = 0

    @property
    def input_count(self):
        return self.nodes[self.entry].count

    def successors(self, node_id):
        node = self.nodes[node_id]
        if isinstance(node, BranchNode):
            return [node.if_true, node.if_false]
        if isinstance(node, OutputNode):
            return []
        return [node.next]


class ProgramBuilder:
    """Appends nodes in order; ``next`` defaults to the following node."""

    def __init__(self):
        self.nodes = []

    @property
    def position(self):
        return len(self.nodes)

    def _append(self, node):
        self.nodes.append(node)
        return len(self.nodes) - 1

    def input(self, count):
        return self._append(InputNode(count=count, next=self.position + 1))

    def compute(self, target, op, left, right, next_node=None):
        next_node = self.position + 1 if next_node is None else next_node
        return self._append(ComputeNode(target=target, op=OPERATIONS[op], args=(left, right), next=next_node))

    def branch(self, register, predicate, if_true, if_false):
        return self._append(BranchNode(register=register, predicate=predicate, if_true=if_true, if_false=if_false))

    def output(self, registers):
        return self._append(OutputNode(registers=tuple(registers)))

    def build(self):
        program = BssProgram(nodes=tuple(self.nodes), entry=0)
        issues = validate_program(program)
        if issues:
            raise ProgramParseError(issues)
        return program


def _is_index(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def _parse_operand(raw, location, issues):
    if _is_index(raw):
        return raw
    if isinstance(raw, dict) and 'reg' in raw and _is_index(raw['reg']):
        return raw['reg']
    if isinstance(raw, dict) and 'const' in raw:
        try:
            return Constant(parse_rational(raw['const']))
        except RationalFormatError as exc:
            issues.append(ProgramIssue(location, str(exc)))
            return None
    issues.append(ProgramIssue(location, f"operand must be a register index or {{'const': 'p/q'}}, got {raw!r}"))
    return None


def _parse_node(raw, index, issues):
    location = f"nodes[{index}]"
    if not isinstance(raw, dict):
        issues.append(ProgramIssue(location, "node must be an object"))
        return None
    kind = raw.get('kind')
    default_next = raw.get('next', index + 1)
    if kind == 'input':
        count = raw.get('count')
        if not _is_index(count) or count == 0:
            issues.append(ProgramIssue(f"{location}.count", "input count must be a positive integer"))
            return None
        return InputNode(count=count, next=default_next)
    if kind == 'compute':
        op = raw.get('op')
        if op not in OPERATIONS:
            issues.append(ProgramIssue(f"{location}.op", f"unknown op {op!r}"))
            return None
        target = raw.get('target')
        if not _is_index(target):
            issues.append(ProgramIssue(f"{location}.target", "target must be a register index"))
            return None
        args = raw.get('args')
        if not isinstance(args, list) or len(args) != 2:
            issues.append(ProgramIssue(f"{location}.args", "compute needs exactly two operands"))
            return None
        operands = [_parse_operand(arg, f"{location}.args[{i}]", issues) for i, arg in enumerate(args)]
        if None in operands:
            return None
        return ComputeNode(target=target, op=OPERATIONS[op], args=tuple(operands), next=default_next)
    if kind == 'branch':
        register, predicate = raw.get('register'), raw.get('predicate')
        if not _is_index(register):
            issues.append(ProgramIssue(f"{location}.register", "branch register must be an index"))
            return None
        if predicate not in PREDICATES:
            issues.append(ProgramIssue(f"{location}.predicate", f"unknown predicate {predicate!r}"))
            return None
        return BranchNode(register=register, predicate=predicate, if_true=raw.get('true'), if_false=raw.get('false'))
    if kind == 'output':
        registers = raw.get('registers')
        if not isinstance(registers, list) or not all(_is_index(r) for r in registers):
            issues.append(ProgramIssue(f"{location}.registers", "output registers must be a list of indices"))
            return None
        return OutputNode(registers=tuple(registers))
    issues.append(ProgramIssue(f"{location}.kind", f"unknown node kind {kind!r}"))
    return None


def _check_targets(program, issues):
    size = len(program.nodes)
    for index, node in enumerate(program.nodes):
        if isinstance(node, BranchNode):
            edges = [('true', node.if_true), ('false', node.if_false)]
        elif isinstance(node, OutputNode):
            edges = []
        else:
            edges = [('next', node.next)]
        for name, target in edges:
            if not _is_index(target) or target >= size:
                issues.append(ProgramIssue(f"nodes[{index}].{name}", f"dangling target {target!r}"))
            elif target == program.entry:
                issues.append(ProgramIssue(f"nodes[{index}].{name}", "input node must not be re-entered"))


def _check_initialization(program, issues):
    """Must-initialized register analysis over every path from the entry."""
    initialized = {program.entry: frozenset()}
    worklist = [program.entry]
    while worklist:
        node_id = worklist.pop()
        node = program.nodes[node_id]
        defined = set(initialized[node_id])
        if isinstance(node, InputNode):
            defined.update(range(node.count))
        elif isinstance(node, ComputeNode):
            defined.add(node.target)
        defined = frozenset(defined)
        for successor in program.successors(node_id):
            known = initialized.get(successor)
            merged = defined if known is None else known & defined
            if merged != known:
                initialized[successor] = merged
                worklist.append(successor)
    for node_id in sorted(initialized):
        node = program.nodes[node_id]
        if isinstance(node, ComputeNode):
            uses = node.uses
        elif isinstance(node, BranchNode):
            uses = [node.register]
        elif isinstance(node, OutputNode):
            uses = list(node.registers)
        else:
            uses = []
        for register in uses:
            if register not in initialized[node_id]:
                issues.append(ProgramIssue(f"nodes[{node_id}]", f"register {register} may be uninitialized"))
    if not any(isinstance(program.nodes[n], OutputNode) for n in initialized):
        issues.append(ProgramIssue('nodes', "no output node is reachable"))


def validate_program(program):
    issues = []
    if not program.nodes:
        return [ProgramIssue('nodes', "program has no nodes")]
    if not _is_index(program.entry) or program.entry >= len(program.nodes):
        return [ProgramIssue('entry', f"dangling target {program.entry!r}")]
    if not isinstance(program.nodes[program.entry], InputNode):
        issues.append(ProgramIssue('entry', "entry node must be an input node"))
    for index, node in enumerate(program.nodes):
        if isinstance(node, InputNode) and index != program.entry:
            issues.append(ProgramIssue(f"nodes[{index}]", "only the entry node may read input"))
    _check_targets(program, issues)
    if not issues:
        _check_initialization(program, issues)
    return issues


def parse_program(text):
    """Parse and validate the JSON program format (string or decoded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProgramParseError([ProgramIssue(f"line {exc.lineno}", exc.msg)]) from None
    else:
        data = text
    if not isinstance(data, dict) or not isinstance(data.get('nodes'), list):
        raise ProgramParseError([ProgramIssue('nodes', "program must be an object with a 'nodes' list")])
    issues = []
    nodes = [_parse_node(raw, index, issues) for index, raw in enumerate(data['nodes'])]
    if issues:
        raise ProgramParseError(issues)
    program = BssProgram(nodes=tuple(nodes), entry=data.get('entry', 0))
    issues = validate_program(program)
    if issues:
        raise ProgramParseError(issues)
    return program


def _operand_to_json(operand):
    if isinstance(operand, Constant):
        return {'const': format_rational(operand.value)}
    return operand


def program_to_json(program):
    nodes = []
    for node in program.nodes:
        if isinstance(node, InputNode):
            nodes.append({'kind': 'input', 'count': node.count, 'next': node.next})
        elif isinstance(node, ComputeNode):
            nodes.append({'kind': 'compute', 'target': node.target, 'op': node.op,
                          'args': [_operand_to_json(a) for a in node.args], 'next': node.next})
        elif isinstance(node, BranchNode):
            nodes.append({'kind': 'branch', 'register': node.register, 'predicate': node.predicate,
                          'true': node.if_true, 'false': node.if_false})
        else:
            nodes.append({'kind': 'output', 'registers': list(node.registers)})
    return {'entry': program.entry, 'nodes': nodes}
