"""Radial C^2 functions built from declarative expressions.

Coefficient profiles and phase functions are not arbitrary code: they are
parsed from expression strings in the radius variable ``r`` over a small
whitelist (rational operations, exp, sin, cos, sqrt, tanh, pi).  Building
them symbolically means first and second derivatives come from exact
differentiation instead of finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from .errors import ProfileConfigError

_R = sp.Symbol("r", nonnegative=True)

_ALLOWED_LOCALS = {
    "r": _R,
    "pi": sp.pi,
    "exp": sp.exp,
    "sin": sp.sin,
    "cos": sp.cos,
    "sqrt": sp.sqrt,
    "tanh": sp.tanh,
    "Abs": sp.Abs,
}

_ALLOWED_FUNCS = (sp.exp, sp.sin, sp.cos, sp.tanh, sp.Abs)


def _parse(text: str) -> sp.Expr:
    try:
        expr = sp.sympify(text, locals=dict(_ALLOWED_LOCALS), rational=False)
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise ProfileConfigError(f"cannot parse expression {text!r}: {exc}") from None
    bad_symbols = expr.free_symbols - {_R}
    if bad_symbols:
        raise ProfileConfigError(f"expression {text!r} uses unknown symbols {bad_symbols}")
    for f in expr.atoms(sp.Function):
        if not isinstance(f, _ALLOWED_FUNCS):
            raise ProfileConfigError(f"expression {text!r} uses unsupported function {f.func}")
    return expr


@dataclass(frozen=True)
class RadialFunction:
    """A scalar function of r >= 0 carrying exact first and second derivatives."""

    expr: sp.Expr
    _f: object = field(repr=False, compare=False, default=None)
    _d1: object = field(repr=False, compare=False, default=None)
    _d2: object = field(repr=False, compare=False, default=None)

    @classmethod
    def from_expression(cls, source) -> "RadialFunction":
        if isinstance(source, RadialFunction):
            return source
        if isinstance(source, (int, float)):
            expr = sp.Float(source) if not float(source).is_integer() else sp.Integer(int(source))
        elif isinstance(source, str):
            expr = _parse(source)
        elif isinstance(source, sp.Expr):
            expr = source
        else:
            raise ProfileConfigError(f"cannot build a radial function from {source!r}")
        d1 = sp.diff(expr, _R)
        d2 = sp.diff(d1, _R)
        make = lambda e: sp.lambdify(_R, e, modules="math")
        return cls(expr=expr, _f=make(expr), _d1=make(d1), _d2=make(d2))

    def __call__(self, r: float) -> float:
        return float(self._f(r))

    def d1(self, r: float) -> float:
        return float(self._d1(r))

    def d2(self, r: float) -> float:
        return float(self._d2(r))

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        return RadialFunction.from_expression(self.expr + other.expr)

    def __str__(self) -> str:
        return str(self.expr)


def constant(value: float) -> RadialFunction:
    return RadialFunction.from_expression(value)
