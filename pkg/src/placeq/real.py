"""The real place: ordered Q-vector spaces.

Order literals are ``t > 0`` / ``t >= 0``; a literal mentioning ``x`` is a
lower or upper bound on ``x``.  Elimination is Fourier-Motzkin over a dense
order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from . import formula as F
from .errors import NoWitnessError, PlaceqError
from .terms import VecTerm


@dataclass(frozen=True)
class Bound:
    term: VecTerm
    strict: bool


def solve_for(t: VecTerm, x: str) -> VecTerm:
    """The value of ``x`` making ``t`` vanish."""
    a = t.coeff(x)
    return t.substitute(x, VecTerm.constant(0)).scale(-1 / a)


def bounds(lits: Sequence[F.Formula], x: str):
    """Split order literals on ``x`` into lower and upper bounds.

    Returns ``(lowers, uppers, rest)``; literals without ``x`` or that are
    not order literals go to ``rest``.
    """
    lowers: List[Bound] = []
    uppers: List[Bound] = []
    rest: List[F.Formula] = []
    for lit in lits:
        if isinstance(lit, F.Order) and lit.term.coeff(x):
            a = lit.term.coeff(x)
            b = Bound(solve_for(lit.term, x), lit.strict)
            (lowers if a > 0 else uppers).append(b)
        else:
            rest.append(lit)
    return lowers, uppers, rest


def fourier_motzkin(lowers: Sequence[Bound], uppers: Sequence[Bound]) -> F.Formula:
    return F.conj(*(F.order(u.term - l.term, l.strict or u.strict)
                    for l in lowers for u in uppers))


def interior(lowers: Sequence[Bound], uppers: Sequence[Bound]) -> F.Formula:
    """The bounds leave an open interval."""
    return F.conj(*(F.order(u.term - l.term, True) for l in lowers for u in uppers))


def _split_disequalities(lits: Sequence[F.Formula], x: str) -> List[List[F.Formula]]:
    acc: List[List[F.Formula]] = [[]]
    for lit in lits:
        if isinstance(lit, F.Not) and isinstance(lit.arg, F.VecEq) and lit.arg.term.coeff(x):
            t = lit.arg.term
            acc = [a + [F.order(t, True)] for a in acc] + [a + [F.order(-t, True)] for a in acc]
        else:
            acc = [a + [lit] for a in acc]
    return acc


def eliminate_vec_var_real(conj: F.Formula, x: str) -> F.Formula:
    """Quantifier-free equivalent of ``exists x. conj`` where ``x`` only
    occurs in order literals, equations and disequations."""
    parts = []
    for clause in F.simplify_clauses(F.dnf_clauses(conj)):
        parts.append(eliminate_clause(list(clause), x))
    return F.disj(*parts)


def eliminate_clause(lits: List[F.Formula], x: str) -> F.Formula:
    for lit in lits:
        if isinstance(lit, F.VecEq) and lit.term.coeff(x):
            s = solve_for(lit.term, x)
            return F.conj(*(F.substitute(l, x, s) for l in lits if l is not lit))
    parts = []
    for branch in _split_disequalities(lits, x):
        lowers, uppers, rest = bounds(branch, x)
        if any(x in F.free_vars(l) for l in rest):
            raise PlaceqError(f"unexpected occurrence of {x} in {F.conj(*rest)}")
        parts.append(F.conj(*rest, fourier_motzkin(lowers, uppers)))
    return F.disj(*parts)


def interval(lits: Sequence[F.Formula], x: str, env: Mapping[str, Fraction]):
    """Concrete bounds ``(lo, lo_strict, hi, hi_strict)`` on ``x``; ``None``
    marks a missing side."""
    lowers, uppers, _ = bounds(lits, x)
    lo = hi = None
    lo_s = hi_s = False
    for b in lowers:
        v = b.term.evaluate(env)
        if lo is None or v > lo or (v == lo and b.strict):
            lo, lo_s = v, b.strict
    for b in uppers:
        v = b.term.evaluate(env)
        if hi is None or v < hi or (v == hi and b.strict):
            hi, hi_s = v, b.strict
    return lo, lo_s, hi, hi_s


def pick_in_interval(lo: Optional[Fraction], lo_s: bool, hi: Optional[Fraction], hi_s: bool,
                     avoid: Sequence[Fraction] = ()) -> Optional[Fraction]:
    """A simple rational in the interval that avoids the listed points."""
    bad = set(avoid)

    def ok(v):
        if v in bad:
            return False
        if lo is not None and (v < lo or (lo_s and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_s and v == hi)):
            return False
        return True

    cands: List[Fraction] = []
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_s or hi_s)):
            return None
        if lo == hi:
            return lo if ok(lo) else None
        for k in range(2, 2 + len(bad) + 2):
            cands.append(lo + (hi - lo) / k)
    elif lo is not None:
        cands = [lo + k for k in range(1, len(bad) + 3)]
    elif hi is not None:
        cands = [hi - k for k in range(1, len(bad) + 3)]
    else:
        cands = [Fraction(k) for k in range(0, len(bad) + 2)]
    for v in cands:
        if ok(v):
            return Fraction(v)
    return None


def witness_real(conj: F.Formula, x: str, env: Mapping[str, Fraction]) -> Fraction:
    """A rational ``x`` satisfying the order conjunction under ``env``."""
    for clause in F.simplify_clauses(F.dnf_clauses(conj)):
        lits = [F.map_atoms(l, lambda a: F.rebuild_atom(a, lambda t: t.partial(env)))
                for l in clause]
        for lit in lits:
            if isinstance(lit, F.VecEq) and lit.term.coeff(x):
                v = solve_for(lit.term, x).const
                if F.evaluate(F.conj(*lits), {x: v}, {}):
                    return v
                break
        else:
            avoid = [solve_for(l.arg.term, x).const for l in lits
                     if isinstance(l, F.Not) and isinstance(l.arg, F.VecEq)]
            v = pick_in_interval(*interval(lits, x, {}), avoid=avoid)
            if v is not None and F.evaluate(F.conj(*lits), {x: v}, {}):
                return v
    raise NoWitnessError("order constraints are infeasible")
