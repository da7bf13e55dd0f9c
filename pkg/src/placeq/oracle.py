"""Exact evaluation and brute-force search, used to test the engine.

Nothing here relies on the elimination procedures for its verdicts except
as a source of *candidates*: a candidate witness proposed by the engine is
accepted only after it has been checked by exact evaluation.
"""
from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, log
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

from . import formula as F
from .errors import PlaceqError
from .rational import INF, ValInt
from .terms import VApp

Assignment = Mapping[str, object]

# a nested quantifier is searched with this bound instead of the caller's
INNER_BOUND = 6
VAL_RANGE = 8


def _split_env(f: F.Formula, a: Assignment):
    vec: Dict[str, Fraction] = {}
    val: Dict[str, ValInt] = {}
    for name, sort in F.free_vars(f).items():
        if name not in a:
            raise PlaceqError(f"no value for free variable {name}")
        v = a[name]
        if sort == F.VAL:
            val[name] = v if v is INF else int(v)
        else:
            vec[name] = Fraction(v)
    return vec, val


def eval_qf(f: F.Formula, assignment: Assignment) -> bool:
    """Exact truth value of the quantifier-free ``f``."""
    if not F.is_quantifier_free(f):
        raise PlaceqError("eval_qf needs a quantifier-free formula")
    vec, val = _split_env(f, assignment)
    return F.evaluate(f, vec, val)


# ---------------------------------------------------------------- candidates


def rationals(bound: int) -> Iterator[Fraction]:
    """``a/b`` in lowest terms, ``1 <= b <= bound``, ``|a| <= bound``:
    by denominator, then nonnegative numerators upwards, then negative."""
    for b in range(1, bound + 1):
        for a in list(range(0, bound + 1)) + list(range(-1, -bound - 1, -1)):
            if gcd(a, b) == 1:
                yield Fraction(a, b)


def centers(f: F.Formula, x: str) -> List[Fraction]:
    """Roots in ``x`` of the linear terms of ``f`` that mention only ``x``."""
    out: List[Fraction] = []
    for a in F.atoms(f):
        terms = list(F.atom_vec_terms(a))
        for s in F.atom_val_terms(a):
            terms += [k.term for k in s.keys if isinstance(k, VApp)]
        for t in terms:
            c = t.coeff(x)
            if c and set(t.vars) == {x}:
                out.append(-t.const / c)
    if not out:
        out.append(Fraction(0))
    return list(dict.fromkeys(out))


def grid(f: F.Formula, x: str, bound: int) -> List[Fraction]:
    """Points ``d + r*p^m`` around every center ``d`` at every place of
    ``f``, with ``|m| <= log_p bound``; midpoints between centers too."""
    ds = centers(f, x)
    out = list(ds)
    primes = sorted(p.prime for p in F.places_of(f) if p.is_finite)
    for p in primes:
        depth = max(1, int(log(max(bound, 2), p)))
        for d in ds:
            for m in range(-depth, depth + 1):
                for r in range(1, p):
                    step = Fraction(r) * Fraction(p) ** m
                    out += [d + step, d - step]
    srt = sorted(ds)
    out += [(a + b) / 2 for a, b in zip(srt, srt[1:])]
    out += [d + e for d in ds for e in (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))]
    return list(dict.fromkeys(out))


def search_witness(f: F.Formula, variables: Sequence[str], bound: int,
                   fixed: Optional[Assignment] = None) -> Optional[Dict[str, Fraction]]:
    """First assignment of ``variables`` (all vector sort) that makes the
    quantifier-free ``f`` true, or ``None``.

    Each variable ranges over :func:`rationals` and then over the center
    grid of the formula with the earlier variables substituted.
    """
    fixed = dict(fixed or {})

    def rec(i: int, g: F.Formula, env: Dict[str, Fraction]):
        if i == len(variables):
            return dict(env) if F.evaluate(g, {}, {}) else None
        x = variables[i]
        if i == len(variables) - 1:
            for v in _candidates(g, x, bound, top=True):
                if F.evaluate(g, {x: v}, {}):
                    env[x] = v
                    return dict(env)
            return None
        for v in _candidates(g, x, bound, top=True):
            h = F.specialize(g, {x: v}, {})
            if isinstance(h, F.Const) and not h.value:
                continue
            env[x] = v
            r = rec(i + 1, h, env)
            if r is not None:
                return r
            del env[x]
        return None

    sorts = F.free_vars(f)
    vec = {k: Fraction(v) for k, v in fixed.items() if sorts.get(k) == F.VEC}
    val = {k: v for k, v in fixed.items() if sorts.get(k) == F.VAL}
    return rec(0, F.specialize(f, vec, val), {})


def _candidates(g: F.Formula, x: str, bound: int, top: bool = False) -> List[Fraction]:
    rs = list(rationals(bound))
    gr = grid(g, x, bound)
    return list(dict.fromkeys(rs + gr if top else gr + rs))


# ---------------------------------------------------------------- quantifiers


def eval_bounded(f: F.Formula, assignment: Assignment, bound: int = INNER_BOUND,
                 use_engine: bool = True) -> bool:
    """Truth value of a possibly quantified formula by bounded search.

    ``exists`` is true only when a concrete witness is found and verified,
    ``forall`` is false only on a concrete counterexample.  Candidates are
    the rational grid, the center grid and, when ``use_engine`` is set, a
    witness proposed by the engine (checked like any other candidate).
    """
    vec, val = _split_env(f, assignment)
    return _eval(F.specialize(f, vec, val), bound, use_engine)


def _eval(f: F.Formula, bound: int, use_engine: bool) -> bool:
    if isinstance(f, F.Atom):
        return F.eval_atom(f, {}, {})
    if isinstance(f, F.Not):
        return not _eval(f.arg, bound, use_engine)
    if isinstance(f, F.And):
        return all(_eval(g, bound, use_engine) for g in f.args)
    if isinstance(f, F.Or):
        return any(_eval(g, bound, use_engine) for g in f.args)
    if isinstance(f, F.Implies):
        return (not _eval(f.lhs, bound, use_engine)) or _eval(f.rhs, bound, use_engine)
    if isinstance(f, F.Exists):
        return _exists(f.var, f.sort, f.body, bound, use_engine)
    if isinstance(f, F.Forall):
        return not _exists(f.var, f.sort, F.neg(f.body), bound, use_engine)
    raise TypeError(f)


@lru_cache(maxsize=4096)
def _engine_candidate(x: str, sort: str, body: F.Formula):
    from . import combine
    try:
        w = combine.witness(F.Exists(x, sort, body))
    except PlaceqError:
        return None
    return w.get(x)


@lru_cache(maxsize=65536)
def _exists(x: str, sort: str, body: F.Formula, bound: int, use_engine: bool) -> bool:
    # the full bound only where the body is quantifier-free; nested levels
    # would multiply the candidate counts
    if not F.is_quantifier_free(body):
        bound = min(bound, INNER_BOUND)
    cands: List[object] = []
    if use_engine:
        c = _engine_candidate(x, sort, body)
        if c is not None:
            cands.append(c)
    if sort == F.VAL:
        cands += [INF] + [i for k in range(VAL_RANGE + 1) for i in ((k, -k) if k else (0,))]
    else:
        cands += _candidates(body, x, bound)
    qf = F.is_quantifier_free(body)
    for v in dict.fromkeys(cands):
        env = ({}, {x: v}) if sort == F.VAL else ({x: v}, {})
        if qf:
            if F.evaluate(body, *env):
                return True
        elif _eval(F.specialize(body, *env), INNER_BOUND, use_engine):
            return True
    return False


# ---------------------------------------------------------------- sampling


@dataclass
class EquivReport:
    ok: bool
    checked: int
    counterexample: Optional[Dict[str, object]] = None
    values: Optional[tuple] = None
    notes: List[str] = field(default_factory=list)

    def __str__(self) -> str:
        if self.ok:
            return f"pass ({self.checked} samples)"
        env = ", ".join(f"{k}={v}" for k, v in sorted(self.counterexample.items()))
        return f"counterexample {env}: {self.values[0]} vs {self.values[1]}"


class Sampler:
    """Seeded source of assignments.

    Vector values are drawn from a fixed mix: ``0``, ``+-1``, ``+-p^k`` for
    the places of the formula and ``|k| <= 3``, centers of the formula plus
    ``p^k``, an earlier variable's value (shifted by ``p^k`` half of the
    time) and random ``a/b`` with ``|a|, b <= 20``.  Value variables get an
    integer in ``[-5, 5]`` or ``oo``.
    """

    def __init__(self, seed: int, formulas: Sequence[F.Formula]):
        self.rng = random.Random(seed)
        places = set()
        for f in formulas:
            places |= F.places_of(f)
        self.primes = sorted(p.prime for p in places if p.is_finite) or [2]
        cs: List[Fraction] = []
        for f in formulas:
            for a in F.atoms(f):
                terms = list(F.atom_vec_terms(a))
                for s in F.atom_val_terms(a):
                    terms += [k.term for k in s.keys if isinstance(k, VApp)]
                for t in terms:
                    cs.append(t.const)
                    for v in t.vars:
                        cs.append(-t.const / t.coeff(v))
        self.centers = sorted(set(cs)) or [Fraction(0)]

    def _power(self) -> Fraction:
        p = self.rng.choice(self.primes)
        return Fraction(p) ** self.rng.randint(-3, 3)

    def vector(self, earlier: List[Fraction]) -> Fraction:
        r = self.rng.random()
        if r < 0.1:
            return Fraction(0)
        if r < 0.2:
            return Fraction(self.rng.choice((1, -1)))
        if r < 0.35:
            return self.rng.choice((1, -1)) * self._power()
        if r < 0.55:
            return self.rng.choice(self.centers) + self.rng.choice((1, -1)) * self._power()
        if r < 0.7 and earlier:
            v = self.rng.choice(earlier)
            return v + self._power() if self.rng.random() < 0.5 else v
        return Fraction(self.rng.randint(-20, 20), self.rng.randint(1, 20))

    def value(self) -> ValInt:
        return INF if self.rng.random() < 0.15 else self.rng.randint(-5, 5)

    def assignment(self, sorts: Mapping[str, str]) -> Dict[str, object]:
        out: Dict[str, object] = {}
        earlier: List[Fraction] = []
        for name in sorted(sorts):
            if sorts[name] == F.VAL:
                out[name] = self.value()
            else:
                out[name] = self.vector(earlier)
                earlier.append(out[name])
        return out


def check_equiv_sampled(f: F.Formula, g: F.Formula, samples: int = 200, seed: int = 0,
                        bound: int = INNER_BOUND, use_engine: bool = True) -> EquivReport:
    """Compare ``f`` and ``g`` on seeded samples of their free variables.

    Quantified formulas are evaluated with :func:`eval_bounded`.
    """
    sorts = dict(F.free_vars(f))
    sorts.update(F.free_vars(g))
    sampler = Sampler(seed, [f, g])
    seen = set()
    checked = 0
    for _ in range(samples):
        a = sampler.assignment(sorts)
        key = tuple(sorted(a.items(), key=lambda kv: kv[0]))
        if key in seen:
            continue
        seen.add(key)
        checked += 1
        vf = _truth(f, a, bound, use_engine)
        vg = _truth(g, a, bound, use_engine)
        if vf != vg:
            return EquivReport(False, checked, a, (vf, vg))
        if not sorts:
            break
    return EquivReport(True, checked)


def _truth(f: F.Formula, a: Assignment, bound: int, use_engine: bool) -> bool:
    if F.is_quantifier_free(f):
        return eval_qf(f, a)
    return eval_bounded(f, a, bound, use_engine)
