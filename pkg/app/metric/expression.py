"""
Safe evaluation of user-supplied F² expressions.

Expressions are parsed once with the ast module and checked against a small
whitelist: arithmetic, unary signs, numeric constants, the names x1..xn and
y1..yn, `pi`, and the functions sqrt, exp, log, sin and cos. Evaluation walks
the tree with jet-aware primitives, so the same expression yields floats or
jets depending on its inputs.
"""

import ast
import math
import operator
import re

from app.jets import cos, exp, log, sin, sqrt

_FUNCTIONS = {"sqrt": sqrt, "exp": exp, "log": log, "sin": sin, "cos": cos}

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}

_VARIABLE = re.compile(r"^([xy])([1-9][0-9]*)$")


class MetricExpression:
    """
    Compiled F²(x, y) expression over n base and n fiber coordinates.

    Args:
        source: Python-syntax arithmetic expression, e.g. "y1**2 + exp(x1)*y2**2"
        n: Manifold dimension

    Raises:
        ValueError: If the expression uses anything outside the whitelist
    """

    def __init__(self, source: str, n: int):
        self.source = source
        self.n = n
        try:
            self.tree = ast.parse(source.strip(), mode="eval")
        except SyntaxError as e:
            raise ValueError(f"Cannot parse expression {source!r}: {e.msg}") from e
        self._validate(self.tree.body)

    def __repr__(self):
        return f"<{type(self).__name__}({self.source!r}, n={self.n})>"

    def _validate(self, node: ast.AST) -> None:
        if isinstance(node, ast.BinOp):
            if type(node.op) not in _BINARY:
                raise ValueError(f"Operator {type(node.op).__name__} is not allowed")
            if isinstance(node.op, ast.Pow) and not _is_number(node.right):
                raise ValueError("Exponents must be numeric constants")
            self._validate(node.left)
            self._validate(node.right)
        elif isinstance(node, ast.UnaryOp):
            if type(node.op) not in _UNARY:
                raise ValueError(f"Operator {type(node.op).__name__} is not allowed")
            self._validate(node.operand)
        elif isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ValueError(f"Constant {node.value!r} is not a number")
        elif isinstance(node, ast.Name):
            if node.id == "pi":
                return
            match = _VARIABLE.match(node.id)
            if match is None or int(match.group(2)) > self.n:
                raise ValueError(f"Unknown name {node.id!r}")
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS:
                raise ValueError("Only sqrt, exp, log, sin and cos may be called")
            if len(node.args) != 1 or node.keywords:
                raise ValueError(f"{node.func.id} takes exactly one argument")
            self._validate(node.args[0])
        else:
            raise ValueError(f"Syntax {type(node).__name__} is not allowed")

    def __call__(self, x, y):
        return self._evaluate(self.tree.body, x, y)

    def _evaluate(self, node: ast.AST, x, y):
        if isinstance(node, ast.BinOp):
            left = self._evaluate(node.left, x, y)
            right = self._evaluate(node.right, x, y)
            if isinstance(node.op, ast.Pow) and float(right).is_integer() and right >= 0:
                # integer powers stay defined for negative bases
                right = int(right)
            return _BINARY[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp):
            return _UNARY[type(node.op)](self._evaluate(node.operand, x, y))
        if isinstance(node, ast.Constant):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "pi":
                return math.pi
            match = _VARIABLE.match(node.id)
            source = x if match.group(1) == "x" else y
            return source[int(match.group(2)) - 1]
        return _FUNCTIONS[node.func.id](self._evaluate(node.args[0], x, y))


def _is_number(node: ast.AST) -> bool:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        return _is_number(node.operand)
    return isinstance(node, ast.Constant) and isinstance(node.value, (int, float))
