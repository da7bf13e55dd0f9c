"""Cheap unsatisfiability tests for conjunctions of literals.

Used while multiplying out disjunctive normal forms: a partial clause that
is already contradictory is dropped before it can multiply further.  The
test only looks at literals constraining a single unknown (one value key,
or one linear form in the vector variables), so it is sound but far from
complete.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Dict, Iterable, Optional, Set

from . import formula as F
from .terms import VApp, VecTerm


class _ValDomain:
    """Possible values of one key: an integer interval, plus ``oo``."""

    __slots__ = ("lo", "hi", "inf_ok", "fin_ok", "avoid")

    def __init__(self):
        self.lo: Optional[int] = None
        self.hi: Optional[int] = None
        self.inf_ok = True
        self.fin_ok = True
        self.avoid: Set[int] = set()

    def at_most(self, n: int):
        self.hi = n if self.hi is None else min(self.hi, n)

    def at_least(self, n: int):
        self.lo = n if self.lo is None else max(self.lo, n)

    def empty(self) -> bool:
        if not self.fin_ok or (self.lo is not None and self.hi is not None and self.lo > self.hi):
            return not self.inf_ok
        if self.lo is not None and self.lo == self.hi and self.lo in self.avoid:
            return not self.inf_ok
        return False


class _VecDomain:
    """Possible values of one linear form: a rational interval."""

    __slots__ = ("lo", "lo_s", "hi", "hi_s", "avoid")

    def __init__(self):
        self.lo: Optional[Fraction] = None
        self.hi: Optional[Fraction] = None
        self.lo_s = self.hi_s = False
        self.avoid: Set[Fraction] = set()

    def lower(self, v: Fraction, strict: bool):
        if self.lo is None or v > self.lo or (v == self.lo and strict):
            self.lo, self.lo_s = v, strict

    def upper(self, v: Fraction, strict: bool):
        if self.hi is None or v < self.hi or (v == self.hi and strict):
            self.hi, self.hi_s = v, strict

    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return self.lo_s or self.hi_s or self.lo in self.avoid
        return False


@lru_cache(maxsize=65536)
def _form(t: VecTerm):
    """``t = lam*(w + c)`` with ``w`` constant-free of leading coefficient 1;
    returns ``(w, lam, c)``."""
    lam = t.coeffs[0][1]
    w = VecTerm(((v, c / lam) for v, c in t.coeffs), 0)
    return w, lam, t.const / lam


@lru_cache(maxsize=65536)
def _vec_effect(lit: F.Formula):
    """``(form, op, value)`` with op one of ``eq``, ``ne``, ``lo``, ``hi``
    (the last two carry strictness)."""
    pos = not isinstance(lit, F.Not)
    a = lit if pos else lit.arg
    w, lam, c = _form(a.term)
    if isinstance(a, F.VecEq):
        return w, ("eq" if pos else "ne"), -c, False
    strict = a.strict if pos else not a.strict
    # lam*(w + c) > 0 (or >=), flipped when negated
    return w, ("lo" if (lam > 0) == pos else "hi"), -c, strict


def consistent(lits: Iterable[F.Formula]) -> bool:
    """``False`` only if the conjunction is unsatisfiable."""
    vals: Dict[object, _ValDomain] = {}
    vecs: Dict[VecTerm, _VecDomain] = {}
    zero: Set[VecTerm] = set()
    nonzero: Set[VecTerm] = set()
    for lit in lits:
        pos = not isinstance(lit, F.Not)
        a = lit if pos else lit.arg
        if isinstance(a, (F.VecEq, F.Order)):
            if isinstance(a, F.VecEq):
                (zero if pos else nonzero).add(a.term)
            w, op, v, strict = _vec_effect(lit)
            d = vecs.setdefault(w, _VecDomain())
            if op == "eq":
                d.lower(v, False)
                d.upper(v, False)
            elif op == "ne":
                d.avoid.add(v)
            elif op == "lo":
                d.lower(v, strict)
            else:
                d.upper(v, strict)
            if d.empty():
                return False
        elif isinstance(a, (F.ValLe, F.ValEq)):
            eff = _val_effect(lit)
            if eff is None:
                continue
            k, inf_ok, fin_ok, lo, hi, avoid = eff
            d = vals.setdefault(k, _ValDomain())
            d.inf_ok = d.inf_ok and inf_ok
            d.fin_ok = d.fin_ok and fin_ok
            if lo is not None:
                d.at_least(lo)
            if hi is not None:
                d.at_most(hi)
            if avoid is not None:
                d.avoid.add(avoid)
            if d.empty():
                return False
    for k, d in vals.items():
        if isinstance(k, VApp):
            if k.term in zero:
                d.fin_ok = False
            if k.term in nonzero:
                d.inf_ok = False
            if d.empty():
                return False
    return True


@lru_cache(maxsize=65536)
def _val_effect(lit: F.Formula):
    """What a literal over a single value key says about that key:
    ``(key, inf_ok, fin_ok, lo, hi, avoid)``, or ``None``."""
    pos = not isinstance(lit, F.Not)
    a = lit if pos else lit.arg
    lhs, rhs = a.lhs, a.rhs
    keys = lhs.keys | rhs.keys
    if len(keys) != 1:
        return None
    (k,) = keys
    inf_ok = fin_ok = True
    lo = hi = avoid = None
    lk, rk = lhs.coeff(k), rhs.coeff(k)
    l_inf, r_inf = bool(lk), bool(rk) or rhs.inf
    if isinstance(a, F.ValLe):
        at_inf = r_inf or not l_inf
    else:
        at_inf = l_inf == r_inf
    if at_inf != pos:
        inf_ok = False
    if rhs.inf:
        return k, inf_ok, not pos, None, None, None
    coef, c = lk - rk, lhs.const - rhs.const
    if isinstance(a, F.ValLe):
        # coef*k + c <= 0, or >= 1 when negated
        if coef == 0:
            fin_ok = (c <= 0) == pos
        elif pos:
            if coef > 0:
                hi = floor(Fraction(-c, coef))
            else:
                lo = ceil(Fraction(-c, coef))
        else:
            if coef > 0:
                lo = ceil(Fraction(1 - c, coef))
            else:
                hi = floor(Fraction(1 - c, coef))
    else:
        if coef == 0:
            fin_ok = (c == 0) == pos
        elif Fraction(-c, coef).denominator != 1:
            fin_ok = not pos
        else:
            v = -c // coef
            if pos:
                lo = hi = v
            else:
                avoid = v
    return k, inf_ok, fin_ok, lo, hi, avoid
