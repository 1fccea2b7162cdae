"""Expressions in ``x`` and ``eps`` evaluated in high precision.

The grammar is ordinary infix with ``^`` for powers, the functions ``abs``,
``exp``, ``log``, ``sqrt`` and the lazy conditional ``where(cond, a, b)``
whose condition may use ``<``, ``<=``, ``>``, ``>=``.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field

from .._mp import mp
from ..errors import DomainEvaluationError, NetSyntaxError

_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}
_CMP = {ast.Lt: operator.lt, ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge}
# exp(t) for t below -2**62 is flushed to zero: such magnitudes are far past
# every negligibility threshold and their exponents would not fit in memory
_HUGE = 2 ** 62


def _exp(t):
    if t < -_HUGE:
        return mp.zero
    if t > _HUGE:
        raise DomainEvaluationError("overflow: result exceeds exp(2**62)")
    return mp.exp(t)


_FUN = {"abs": abs, "exp": _exp, "log": lambda v: mp.log(v),
        "sqrt": lambda v: mp.sqrt(v)}


def _check(node):
    if isinstance(node, ast.Expression):
        return _check(node.body)
    if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
        _check(node.left)
        _check(node.right)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        _check(node.operand)
    elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        pass
    elif isinstance(node, ast.Name) and node.id in ("x", "eps"):
        pass
    elif isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMP:
        _check(node.left)
        _check(node.comparators[0])
    elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        name = node.func.id
        if name == "where" and len(node.args) == 3:
            pass
        elif name in _FUN and len(node.args) == 1:
            pass
        else:
            raise NetSyntaxError(f"unsupported call {name}() with {len(node.args)} arguments")
        for a in node.args:
            _check(a)
    else:
        raise NetSyntaxError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _eval(node, x, eps):
    if isinstance(node, ast.BinOp):
        a, b = _eval(node.left, x, eps), _eval(node.right, x, eps)
        if isinstance(node.op, ast.Div) and b == 0:
            raise DomainEvaluationError("division by zero")
        if isinstance(node.op, ast.Pow) and a < 0 and not mp.isint(b):
            raise DomainEvaluationError("negative base with a non-integer power")
        if isinstance(node.op, ast.Pow):
            if a == 0 and b < 0:
                raise DomainEvaluationError("zero to a negative power")
            if abs(b) <= 1024 and mp.isint(b):
                return a ** int(b)
            if a > 0:
                return _exp(b * mp.log(a))
        return _BIN[type(node.op)](a, b)
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, x, eps)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant):
        return mp.mpf(node.value)
    if isinstance(node, ast.Name):
        return x if node.id == "x" else eps
    if isinstance(node, ast.Compare):
        return _CMP[type(node.ops[0])](_eval(node.left, x, eps), _eval(node.comparators[0], x, eps))
    name = node.func.id
    if name == "where":
        cond = _eval(node.args[0], x, eps)
        return _eval(node.args[1] if cond else node.args[2], x, eps)
    v = _eval(node.args[0], x, eps)
    if name == "log" and v <= 0:
        raise DomainEvaluationError("log of a nonpositive number")
    if name == "sqrt" and v < 0:
        raise DomainEvaluationError("sqrt of a negative number")
    return _FUN[name](v)


@dataclass(frozen=True, eq=False)
class Expr:
    """A parsed expression; call it with mpf ``x`` and ``eps``."""

    text: str
    tree: ast.Expression = field(repr=False, default=None)

    def __post_init__(self):
        src = self.text.replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise NetSyntaxError(f"cannot parse expression {self.text!r}: {exc.msg}") from None
        _check(tree)
        object.__setattr__(self, "tree", tree)

    def __call__(self, x, eps):
        try:
            v = _eval(self.tree.body, mp.mpf(x), mp.mpf(eps))
        except ZeroDivisionError:
            raise DomainEvaluationError(f"{self.text} undefined at x={mp.nstr(x, 8)}") from None
        if isinstance(v, bool):
            raise DomainEvaluationError(f"{self.text} is a condition, not a value")
        return v

    def __str__(self) -> str:
        return self.text


def parse_expr(text: str) -> Expr:
    return Expr(text)
