"""Translations between the one-sorted and two-sorted languages.

* ``to_two_sorted``: ``L_p(a, b)`` becomes ``v_p(a) >= v_p(b)``,
  ``M_p(a, b, c)`` becomes ``v_p(a) + v_p(b) = v_p(c)`` and ``Q_{n,p}(a)``
  becomes ``P_n(v_p(a))``.
* ``to_one_sorted``: the converse on the quantifier-free fragment without
  value variables.  Integer shifts are absorbed as powers of ``p``.
* ``l_to_order`` / ``order_to_l``: the real place, where ``L_inf`` and the
  order define each other.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Tuple

from . import formula as F
from .errors import UnsupportedConstruct
from .terms import REAL, Place, VApp, ValTerm, VecTerm


def _map(f: F.Formula, fn) -> F.Formula:
    """Apply ``fn`` to every atom, keeping the quantifier structure."""
    if isinstance(f, F.Atom):
        return fn(f)
    if isinstance(f, F.Not):
        return F.neg(_map(f.arg, fn))
    if isinstance(f, F.And):
        return F.conj(*(_map(g, fn) for g in f.args))
    if isinstance(f, F.Or):
        return F.disj(*(_map(g, fn) for g in f.args))
    if isinstance(f, F.Implies):
        return F.Implies(_map(f.lhs, fn), _map(f.rhs, fn))
    if isinstance(f, F.Quant):
        return type(f)(f.var, f.sort, _map(f.body, fn))
    raise TypeError(f)


# ---------------------------------------------------------------- one -> two


def surface_to_value(a: F.Atom) -> F.Formula:
    if isinstance(a, F.LAtom):
        return F.val_le(ValTerm.v(a.place, a.t2), ValTerm.v(a.place, a.t1))
    if isinstance(a, F.MAtom):
        return F.val_eq(ValTerm.v(a.place, a.t1) + ValTerm.v(a.place, a.t2),
                        ValTerm.v(a.place, a.t3))
    if isinstance(a, F.QAtom):
        return F.div(a.n, ValTerm.v(a.place, a.term))
    return a


def to_two_sorted(f: F.Formula) -> F.Formula:
    def fn(a: F.Atom) -> F.Formula:
        if isinstance(a, F.SURFACE) and not a.place.is_finite:
            raise UnsupportedConstruct(f"{type(a).__name__[0]} at the real place has no "
                                       "two-sorted form")
        return surface_to_value(a)
    return _map(f, fn)


# ---------------------------------------------------------------- two -> one


def _pw(p: int, k: int) -> Fraction:
    return Fraction(p) ** k


def _side(s: ValTerm) -> Tuple[List[VApp], int]:
    """Expand a value term into a list of valuation keys (with repetition)
    and a constant; value variables are rejected."""
    keys: List[VApp] = []
    for k, c in s.coeffs:
        if not isinstance(k, VApp):
            raise UnsupportedConstruct(f"value variable {k} has no one-sorted form")
        if c < 0:
            raise UnsupportedConstruct(f"negative coefficient in {s}")
        keys.extend([k] * c)
    return keys, s.const


def _place(keys: List[VApp]) -> Place:
    places = {k.place for k in keys}
    if len(places) != 1:
        raise UnsupportedConstruct("value atom mixes places")
    return places.pop()


def _lam(p: Place, a: VecTerm, b: VecTerm) -> F.Formula:
    return F.conj(F.l_atom(p, a, b), F.l_atom(p, b, a))


def _le_one(lhs: ValTerm, rhs: ValTerm) -> F.Formula:
    lk, n = _side(lhs)
    rk, m = _side(rhs)
    if len(lk) > 1 or len(rk) > 1:
        raise UnsupportedConstruct(f"{lhs} <= {rhs} has no one-sorted form")
    place = _place(lk + rk)
    p = place.prime
    one = VecTerm.constant(1)
    # v(p^n a) <= v(p^m b)  iff  L(p^m b, p^n a); move the power to one side
    a = lk[0].term if lk else one
    b = rk[0].term if rk else one
    k = n - m
    if k >= 0:
        return F.l_atom(place, b, a.scale(_pw(p, k)))
    return F.l_atom(place, b.scale(_pw(p, -k)), a)


def _eq_one(lhs: ValTerm, rhs: ValTerm) -> F.Formula:
    lk, n = _side(lhs)
    rk, m = _side(rhs)
    if len(lk) < len(rk):
        lk, n, rk, m = rk, m, lk, n
    place = _place(lk + rk)
    p = place.prime
    one = VecTerm.constant(1)
    if len(lk) <= 1 and len(rk) <= 1:
        a = lk[0].term if lk else one
        b = rk[0].term if rk else one
        k = n - m
        if k >= 0:
            return _lam(place, b, a.scale(_pw(p, k)))
        return _lam(place, b.scale(_pw(p, -k)), a)
    if len(lk) == 2 and len(rk) <= 1:
        # v(a1) + v(a2) + n = v(b) + m  iff  M(a1, a2, p^(m-n) b)
        b = rk[0].term if rk else one
        return F.m_atom(place, lk[0].term, lk[1].term, b.scale(_pw(p, m - n)))
    raise UnsupportedConstruct(f"{lhs} = {rhs} has no one-sorted form")


def _div_one(a: F.Div) -> F.Formula:
    keys, c = _side(a.term)
    distinct = list(dict.fromkeys(keys))
    if len(distinct) != 1:
        raise UnsupportedConstruct(f"{a} has no one-sorted form")
    key = distinct[0]
    k, n = len(keys), a.n
    g = gcd(k, n)
    if c % g:
        # only w = oo satisfies it
        return F.vec_eq(key.term)
    n2, k2, c2 = n // g, k // g, c // g
    if n2 == 1:
        return F.TRUE
    e = (c2 * pow(k2, -1, n2)) % n2
    return F.q_atom(key.place, n2, key.term.scale(_pw(key.place.prime, e)))


def value_to_surface(a: F.Atom) -> F.Formula:
    if isinstance(a, F.ValEq) and a.rhs.inf:
        # the constructors keep oo on the right and only in equations
        parts = []
        for k in sorted(a.lhs.keys, key=str):
            if not isinstance(k, VApp):
                raise UnsupportedConstruct(f"value variable {k} has no one-sorted form")
            parts.append(F.vec_eq(k.term))
        return F.disj(*parts)
    if isinstance(a, F.ValLe):
        return _le_one(a.lhs, a.rhs)
    if isinstance(a, F.ValEq):
        return _eq_one(a.lhs, a.rhs)
    if isinstance(a, F.Div):
        return _div_one(a)
    return a


def to_one_sorted(f: F.Formula) -> F.Formula:
    """One-sorted equivalent of a quantifier-free two-sorted formula."""
    if not F.is_quantifier_free(f):
        raise UnsupportedConstruct("one-sorted translation needs a quantifier-free formula")
    if any(s == F.VAL for s in F.free_vars(f).values()):
        raise UnsupportedConstruct("one-sorted translation needs a formula without value "
                                   "variables")
    return _map(f, value_to_surface)


# ---------------------------------------------------------------- real place


def _ge(a: VecTerm, b: VecTerm) -> F.Formula:
    return F.order(a - b)


def l_inf_as_order(t1: VecTerm, t2: VecTerm) -> F.Formula:
    """``|x| <= |y|`` as ``y>=x>=0 | y>=-x>=0 | -y>=x>=0 | -y>=-x>=0``."""
    zero = VecTerm.constant(0)
    x, y = t1, t2
    return F.disj(
        F.conj(_ge(y, x), _ge(x, zero)),
        F.conj(_ge(y, -x), _ge(-x, zero)),
        F.conj(_ge(-y, x), _ge(x, zero)),
        F.conj(_ge(-y, -x), _ge(-x, zero)),
    )


def l_to_order(f: F.Formula) -> F.Formula:
    """Replace every ``L_inf`` atom by order atoms."""
    def fn(a: F.Atom) -> F.Formula:
        if isinstance(a, F.LAtom) and not a.place.is_finite:
            return l_inf_as_order(a.t1, a.t2)
        if isinstance(a, (F.MAtom, F.QAtom)) and not a.place.is_finite:
            raise UnsupportedConstruct(f"{type(a).__name__[0]}[inf] has no order form")
        return a
    return _map(f, fn)


def order_to_l(f: F.Formula) -> F.Formula:
    """Replace order atoms by ``L_inf``: ``x <= y`` is ``L(y-x-1, y-x+1)``."""
    def fn(a: F.Atom) -> F.Formula:
        if isinstance(a, F.Order):
            t = a.term
            if a.strict:
                # t > 0  iff  not (t <= 0)  iff  not L(-t-1, -t+1)
                return F.neg(F.l_atom(REAL, (-t).shift(-1), (-t).shift(1)))
            return F.l_atom(REAL, t.shift(-1), t.shift(1))
        return a
    return _map(f, fn)


DIRECTIONS = ("two-sorted", "one-sorted", "order", "L")


def translate(f: F.Formula, to: str) -> F.Formula:
    if to == "two-sorted":
        return to_two_sorted(f)
    if to == "one-sorted":
        return to_one_sorted(f)
    if to == "order":
        return l_to_order(f)
    if to == "L":
        return order_to_l(f)
    raise ValueError(f"unknown translation target {to!r}")
