"""Interval-evaluable expressions over oracle inputs.

Expressions are built from variables, rational constants, + - * /,
negation and max(0, .), and can be evaluated exactly on rationals or
enclosed on intervals.
"""
from dataclasses import dataclass
from fractions import Fraction

from exact.interval import DyadicInterval, interval_op
from exact.rational import ZERO, as_rational


class Expr:

    def enclose(self, boxes):
        raise NotImplementedError

    def evaluate(self, values):
        raise NotImplementedError

    def __add__(self, other):
        return BinaryOp('+', self, as_expr(other))

    def __radd__(self, other):
        return BinaryOp('+', as_expr(other), self)

    def __sub__(self, other):
        return BinaryOp('-', self, as_expr(other))

    def __rsub__(self, other):
        return BinaryOp('-', as_expr(other), self)

    def __mul__(self, other):
        return BinaryOp('*', self, as_expr(other))

    def __rmul__(self, other):
        return BinaryOp('*', as_expr(other), self)

    def __truediv__(self, other):
        return BinaryOp('/', self, as_expr(other))

    def __rtruediv__(self, other):
        return BinaryOp('/', as_expr(other), self)

    def __neg__(self):
        return Negate(self)


@dataclass(frozen=True, eq=False)
class Var(Expr):
    index: int

    def enclose(self, boxes):
        return boxes[self.index]

    def evaluate(self, values):
        return values[self.index]


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: Fraction

    def enclose(self, boxes):
        return DyadicInterval.point(self.value)

    def evaluate(self, values):
        return self.value


@dataclass(frozen=True, eq=False)
class BinaryOp(Expr):
    op: str
    left: Expr
    right: Expr

    def enclose(self, boxes):
        return interval_op(self.op, self.left.enclose(boxes), self.right.enclose(boxes))

    def evaluate(self, values):
        a, b = self.left.evaluate(values), self.right.evaluate(values)
        if self.op == '+':
            return a + b
        if self.op == '-':
            return a - b
        if self.op == '*':
            return a * b
        return a / b


@dataclass(frozen=True, eq=False)
class Negate(Expr):
    operand: Expr

    def enclose(self, boxes):
        return -self.operand.enclose(boxes)

    def evaluate(self, values):
        return -self.operand.evaluate(values)


@dataclass(frozen=True, eq=False)
class Relu(Expr):
    operand: Expr

    def enclose(self, boxes):
        return self.operand.enclose(boxes).relu()

    def evaluate(self, values):
        return max(ZERO, self.operand.evaluate(values))


def as_expr(value):
    if isinstance(value, Expr):
        return value
    return Const(as_rational(value))


def relu(expr):
    return Relu(as_expr(expr))
