"""Canonical text and JSON rendering of formulas.

The text form is the parser's input language; ``parse(to_text(f))`` gives
back ``f`` (up to renaming of bound variables) when the sorts of free value
variables are passed to the parser.
"""
from __future__ import annotations

from typing import Any, Dict

from .formula import (And, Const, Div, Exists, Forall, Formula, Implies, LAtom, MAtom,
                      Not, Or, Order, QAtom, ValEq, ValLe, VecEq)
from .rational import format_rat
from .terms import VApp, ValTerm, VecTerm

_QUANT, _IMPL, _DISJ, _CONJ, _LIT = range(5)


def _split(t: VecTerm):
    """Write ``t`` as ``P - N`` with nonnegative coefficients on both sides."""
    pos = VecTerm([(v, c) for v, c in t.coeffs if c > 0], max(t.const, 0))
    negp = VecTerm([(v, -c) for v, c in t.coeffs if c < 0], max(-t.const, 0))
    return pos, negp


def _side(t: VecTerm) -> str:
    return str(t) if (t.coeffs or t.const) else "0"


def atom_text(a) -> str:
    if isinstance(a, Const):
        return "0 = 0" if a.value else "!(0 = 0)"
    if isinstance(a, VecEq):
        p, n = _split(a.term)
        return f"{_side(p)} = {_side(n)}"
    if isinstance(a, Order):
        p, n = _split(a.term)
        op = "<" if a.strict else "<="
        return f"{_side(n)} {op} {_side(p)}"
    if isinstance(a, ValLe):
        return f"{a.lhs} <= {a.rhs}"
    if isinstance(a, ValEq):
        return f"{a.lhs} = {a.rhs}"
    if isinstance(a, Div):
        return f"P[{a.n}]({a.term})"
    if isinstance(a, LAtom):
        return f"L[{a.place}]({a.t1}, {a.t2})"
    if isinstance(a, MAtom):
        return f"M[{a.place}]({a.t1}, {a.t2}, {a.t3})"
    if isinstance(a, QAtom):
        return f"Q[{a.place},{a.n}]({a.term})"
    raise TypeError(a)


def to_text(f: Formula, level: int = _QUANT) -> str:
    def wrap(s: str, mine: int) -> str:
        return f"({s})" if level > mine else s

    if isinstance(f, (Exists, Forall)):
        q = "E" if isinstance(f, Exists) else "A"
        return wrap(f"{q} {f.var}:{f.sort}. {to_text(f.body, _QUANT)}", _QUANT)
    if isinstance(f, Implies):
        return wrap(f"{to_text(f.lhs, _DISJ)} -> {to_text(f.rhs, _IMPL)}", _IMPL)
    if isinstance(f, Or):
        return wrap(" | ".join(to_text(g, _CONJ) for g in f.args), _DISJ)
    if isinstance(f, And):
        return wrap(" & ".join(to_text(g, _LIT) for g in f.args), _CONJ)
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, (LAtom, MAtom, QAtom, Div)):
            return "!" + atom_text(g)
        return "!(" + to_text(g, _QUANT) + ")"
    return atom_text(f)


# ---------------------------------------------------------------- JSON


def _vec_json(t: VecTerm) -> Dict[str, Any]:
    return {"coeffs": {v: format_rat(c) for v, c in t.coeffs}, "const": format_rat(t.const)}


def _val_json(s: ValTerm) -> Dict[str, Any]:
    if s.inf:
        return {"inf": True}
    coeffs = []
    for k, c in s.coeffs:
        if isinstance(k, VApp):
            coeffs.append({"v": {"place": str(k.place), **_vec_json(k.term)}, "coef": c})
        else:
            coeffs.append({"var": k, "coef": c})
    return {"inf": False, "coeffs": coeffs, "const": s.const}


def to_json(f: Formula) -> Dict[str, Any]:
    if isinstance(f, Const):
        return {"kind": "true" if f.value else "false"}
    if isinstance(f, VecEq):
        return {"kind": "vec_eq", **_vec_json(f.term)}
    if isinstance(f, Order):
        return {"kind": "gt" if f.strict else "ge", **_vec_json(f.term)}
    if isinstance(f, (ValLe, ValEq)):
        kind = "val_le" if isinstance(f, ValLe) else "val_eq"
        return {"kind": kind, "children": [_val_json(f.lhs), _val_json(f.rhs)]}
    if isinstance(f, Div):
        return {"kind": "div", "n": f.n, "children": [_val_json(f.term)]}
    if isinstance(f, LAtom):
        return {"kind": "L", "place": str(f.place), "children": [_vec_json(f.t1), _vec_json(f.t2)]}
    if isinstance(f, MAtom):
        return {"kind": "M", "place": str(f.place),
                "children": [_vec_json(f.t1), _vec_json(f.t2), _vec_json(f.t3)]}
    if isinstance(f, QAtom):
        return {"kind": "Q", "place": str(f.place), "n": f.n, "children": [_vec_json(f.term)]}
    if isinstance(f, Not):
        return {"kind": "not", "children": [to_json(f.arg)]}
    if isinstance(f, (And, Or)):
        kind = "and" if isinstance(f, And) else "or"
        return {"kind": kind, "children": [to_json(g) for g in f.args]}
    if isinstance(f, Implies):
        return {"kind": "implies", "children": [to_json(f.lhs), to_json(f.rhs)]}
    if isinstance(f, (Exists, Forall)):
        kind = "exists" if isinstance(f, Exists) else "forall"
        return {"kind": kind, "var": f.var, "sort": f.sort, "children": [to_json(f.body)]}
    raise TypeError(f)
