"""Elimination of a vector variable from finite-place valuation literals.

Every ``v_p(a*x + s)`` is rewritten as ``v_p(a) + mu`` where ``mu`` stands
for ``v_p(x - d)`` and ``d = -s/a`` is a *center*.  Whether an integer
assignment to the ``mu``'s is realized by some rational ``x`` depends only
on the mutual distances ``v_p(d_i - d_j)`` of the centers:

* pairwise law: ``mu_i < mu_j`` forces ``v_p(d_i - d_j) = mu_i`` and
  ``mu_i = mu_j`` forces ``v_p(d_i - d_j) >= mu_i``;
* residue capacity: the centers at the maximal level ``M`` fall into fewer
  than ``p`` classes modulo ``p^(M+1)``, so a residue is left for ``x``.

The conditions are enumerated as patterns (weak orders of the ``mu``'s plus
a partition of the top cluster) and the ``mu``'s are eliminated by Cooper's
method.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import formula as F
from . import presburger as PB
from .errors import NoWitnessError, UnsupportedConstruct
from .prune import consistent
from .rational import vp
from .terms import Key, Place, VApp, ValTerm, VecTerm, key_sort

# cap on the sphere patterns examined for one variable
SPHERE_LIMIT = 3000


# ---------------------------------------------------------------- combinatorics


def set_partitions(items: Sequence, can_join=None,
                   max_blocks: Optional[int] = None) -> Iterator[List[List]]:
    """All set partitions of ``items`` (blocks keep input order).

    ``can_join(a, b)`` may veto putting two items in one block; partitions
    with more than ``max_blocks`` blocks are skipped.
    """
    items = list(items)
    if not items:
        yield []
        return

    def rec(i: int, blocks: List[List]):
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        it = items[i]
        for b in blocks:
            if can_join is None or all(can_join(o, it) for o in b):
                b.append(it)
                yield from rec(i + 1, blocks)
                b.pop()
        if max_blocks is None or len(blocks) < max_blocks:
            blocks.append([it])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def weak_orders(items: Sequence) -> Iterator[List[List]]:
    """Ordered set partitions: lists of levels from lowest to highest."""
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    for size in range(1, n + 1):
        for first in itertools.combinations(range(n), size):
            chosen = [items[i] for i in first]
            rest = [items[i] for i in range(n) if i not in first]
            for tail in weak_orders(rest):
                yield [chosen] + tail


# ---------------------------------------------------------------- sphere systems


@dataclass
class SphereSystem:
    """Centers per place, each with the value variable standing for
    ``v_p(x - center)``, and the literals rewritten over those variables."""

    x: str
    centers: Dict[Place, List[Tuple[VecTerm, str]]] = field(default_factory=dict)
    literals: List[F.Formula] = field(default_factory=list)

    @property
    def mus(self) -> List[str]:
        return [m for p in sorted(self.centers) for _, m in self.centers[p]]

    def center_terms(self) -> List[VecTerm]:
        seen = {}
        for p in sorted(self.centers):
            for d, _ in self.centers[p]:
                seen.setdefault(d, None)
        return list(seen)


def center_of(k: VApp, x: str) -> Tuple[VecTerm, int]:
    """``v_p(k.term) = shift + v_p(x - center)``."""
    a = k.term.coeff(x)
    rest = k.term.substitute(x, VecTerm.constant(0))
    center = rest.scale(-1 / a)
    return center, vp(a, k.place.prime)


def x_keys(lit: F.Formula, x: str) -> List[VApp]:
    return [k for k in PB.literal_keys(lit) if isinstance(k, VApp) and k.term.coeff(x)]


def normalize_to_centers(lits: Sequence[F.Formula], x: str, avoid: set) -> SphereSystem:
    """Rewrite the valuation literals mentioning ``x`` over fresh ``mu``'s."""
    system = SphereSystem(x)
    names: Dict[Tuple[Place, VecTerm], str] = {}
    used = set(avoid)

    def mu_for(k: VApp) -> ValTerm:
        center, shift = center_of(k, x)
        key = (k.place, center)
        if key not in names:
            name = F.fresh_name("mu", used)
            used.add(name)
            names[key] = name
            system.centers.setdefault(k.place, []).append((center, name))
        return ValTerm.var(names[key]).shift(shift)

    def val_fn(s: ValTerm) -> ValTerm:
        for k in list(s.keys):
            if isinstance(k, VApp) and k.term.coeff(x):
                s = s.replace_key(k, mu_for(k))
        return s

    for lit in lits:
        system.literals.append(F.map_atoms(lit, lambda a: F.rebuild_atom(a, None, val_fn)))
    return system


def merge_centers(system: SphereSystem, blocks: List[List[VecTerm]]
                  ) -> Tuple[SphereSystem, List[F.Formula]]:
    """Identify centers lying in one block; returns the merged system and
    the literals stating the partition."""
    rep = {}
    lits: List[F.Formula] = []
    for b in blocks:
        for d in b:
            rep[d] = b[0]
            if d != b[0]:
                lits.append(F.vec_eq(d - b[0]))
    heads = [b[0] for b in blocks]
    for i, j in itertools.combinations(range(len(heads)), 2):
        lits.append(F.neg(F.vec_eq(heads[i] - heads[j])))
    out = SphereSystem(system.x)
    rename: Dict[str, ValTerm] = {}
    for p, cs in system.centers.items():
        seen: Dict[VecTerm, str] = {}
        for d, m in cs:
            r = rep[d]
            if r in seen:
                rename[m] = ValTerm.var(seen[r])
            else:
                seen[r] = m
                out.centers.setdefault(p, []).append((r, m))
    for lit in system.literals:
        for m, t in rename.items():
            lit = F.map_atoms(lit, lambda a, m=m, t=t: F.subst_atom_val(a, m, t))
        out.literals.append(lit)
    return out, lits


def center_partitions(system: SphereSystem) -> Iterator[List[List[VecTerm]]]:
    def can_join(a: VecTerm, b: VecTerm) -> bool:
        return not (a - b).is_const()
    yield from set_partitions(system.center_terms(), can_join)


def delta(place: Place, d1: VecTerm, d2: VecTerm) -> ValTerm:
    return ValTerm.v(place, d1 - d2)


@lru_cache(maxsize=4096)
def realizability(place: Place, centers: Tuple[Tuple[VecTerm, str], ...]
                  ) -> List[List[F.Formula]]:
    """Patterns (as literal lists) whose disjunction says that some rational
    ``x`` has ``v_p(x - d_i) = mu_i`` for all i, all ``mu_i`` finite and the
    centers pairwise distinct.

    Levels of the weak order are built from the bottom up; distances that
    are constants prune inconsistent prefixes early.
    """
    n = len(centers)
    if n <= 1:
        return [[]]
    p = place.prime
    mu = [ValTerm.var(m) for _, m in centers]
    dl: Dict[Tuple[int, int], ValTerm] = {}
    for i, j in itertools.combinations(range(n), 2):
        dl[i, j] = dl[j, i] = delta(place, centers[i][0], centers[j][0])

    def const(i, j) -> Optional[int]:
        d = dl[i, j]
        return d.const if not d.coeffs else None

    out: List[List[F.Formula]] = []

    def finish(top: List[int], lits: List[F.Formula], low: Optional[int]):
        if len(top) == 1:
            out.append(lits)
            return
        m_top = mu[top[0]]
        # x needs a residue class of its own at the top level
        for blocks in set_partitions(top, max_blocks=p - 1):
            where = {i: k for k, b in enumerate(blocks) for i in b}
            across = {const(i, j) for i, j in itertools.combinations(top, 2)
                      if where[i] != where[j]} - {None}
            within = {const(i, j) for i, j in itertools.combinations(top, 2)
                      if where[i] == where[j]} - {None}
            if len(across) > 1:
                continue
            if across:
                level = next(iter(across))
                if (low is not None and level <= low) or (within and min(within) <= level):
                    continue
            extra = []
            for i, j in itertools.combinations(top, 2):
                if where[i] == where[j]:
                    extra.append(F.val_le(m_top.shift(1), dl[i, j]))
                else:
                    extra.append(F.val_eq(dl[i, j], m_top))
            if F.FALSE not in extra:
                out.append(lits + extra)

    def rec(remaining: List[int], prev: Optional[int], low: Optional[int],
            lits: List[F.Formula]):
        # prev: index of a mu on the previous level; low: its known value
        for size in range(1, len(remaining) + 1):
            for chosen in itertools.combinations(remaining, size):
                rest = [i for i in remaining if i not in chosen]
                new: List[F.Formula] = [F.val_eq(mu[i], mu[chosen[0]]) for i in chosen[1:]]
                if prev is not None:
                    new.append(F.val_le(mu[prev].shift(1), mu[chosen[0]]))
                if not rest:
                    finish(list(chosen), lits + new, low)
                    continue
                vals = {const(i, j) for i in chosen for j in rest} - {None}
                if len(vals) > 1:
                    continue
                value = next(iter(vals)) if vals else None
                if value is not None and low is not None and value <= low:
                    continue
                ok = True
                for i in chosen:
                    for j in rest:
                        new.append(F.val_eq(dl[i, j], mu[i]))
                for i, j in itertools.combinations(chosen, 2):
                    c = const(i, j)
                    if c is not None and value is not None and c < value:
                        ok = False
                    new.append(F.val_le(mu[i], dl[i, j]))
                if not ok or F.FALSE in new:
                    continue
                rec(rest, chosen[0], value if value is not None else low, lits + new)

    rec(list(range(n)), None, None, [])
    return out


def patterns(system: SphereSystem) -> Iterator[List[F.Formula]]:
    """Products of per-place realizability patterns."""
    per_place = [realizability(p, tuple(system.centers[p])) for p in sorted(system.centers)]
    for combo in itertools.product(*per_place):
        yield [l for part in combo for l in part]


def delta_keys(system: SphereSystem) -> List[Key]:
    out = []
    for p, cs in system.centers.items():
        for (d1, _), (d2, _) in itertools.combinations(cs, 2):
            out.extend(delta(p, d1, d2).keys)
    return out


# ---------------------------------------------------------------- elimination


def sphere_part(lits: Sequence[F.Formula], x: str, avoid: set) -> F.Formula:
    """``exists x`` of valuation literals, restricted to ``x`` different
    from every center (all ``v_p(x - d)`` finite)."""
    system = normalize_to_centers(lits, x, avoid)
    mus = system.mus
    if not mus:
        return F.conj(*system.literals)
    parts = []
    work = 0
    for blocks in center_partitions(system):
        merged, plits = merge_centers(system, blocks)
        m_mus = merged.mus
        fin = PB.Finite(m_mus)
        for k in delta_keys(merged):
            fin.add(k)
        cur = [PB.normalize_literal(l, fin) for l in merged.literals]
        co = []
        for l in cur:
            ks = PB.literal_keys(l)
            if ks & set(m_mus):
                co.extend(sorted((k for k in ks if k not in fin), key=key_sort))
        for markers, branch, _ in PB.split_infinity(cur, list(dict.fromkeys(co)), finite=fin):
            for pat in patterns(merged):
                work += 1
                if work > SPHERE_LIMIT:
                    raise UnsupportedConstruct(
                        f"more than {SPHERE_LIMIT} sphere patterns for {x}")
                if not consistent(branch + pat):
                    continue
                body = PB.cooper_literals(branch + pat, m_mus)
                if body != F.FALSE:
                    parts.append(F.conj(*plits, *markers, body))
    return F.disj(*parts)


def eliminate_vec_var_finite(conj: F.Formula, x: str, place: Optional[Place] = None
                             ) -> F.Formula:
    """Quantifier-free equivalent of ``exists x. conj`` for a conjunction of
    valuation literals (at one or several finite places)."""
    clauses = F.simplify_clauses(F.dnf_clauses(conj))
    avoid = F.all_vars(conj) | {x}
    parts = []
    for clause in clauses:
        lits = list(clause)
        if place is not None:
            for l in lits:
                for k in x_keys(l, x):
                    if k.place != place:
                        raise ValueError(f"literal {l} is not at place {place}")
        roots = []
        for l in lits:
            for k in x_keys(l, x):
                d, _ = center_of(k, x)
                if d not in roots:
                    roots.append(d)
        for d in roots:
            parts.append(F.conj(*(F.substitute(l, x, d) for l in lits)))
        mine = [l for l in lits if x_keys(l, x)]
        other = [l for l in lits if not x_keys(l, x)]
        if any(x in F.free_vars(l) for l in other):
            raise ValueError("x occurs outside valuation literals")
        parts.append(F.conj(*other, sphere_part(mine, x, avoid)))
    return F.disj(*parts)


# ---------------------------------------------------------------- witnesses


def witness_finite(place: Place, centers: Sequence[Fraction], mus: Sequence[int]) -> Fraction:
    """A rational ``x`` with ``v_p(x - centers[i]) = mus[i]`` for every i."""
    p = place.prime
    if not centers:
        return Fraction(0)
    top = max(mus)
    a = mus.index(top)
    for r in range(1, p):
        cand = Fraction(centers[a]) + Fraction(p) ** top * r
        if all(vp(cand - d, p) == m for d, m in zip(centers, mus)):
            return cand
    raise NoWitnessError(f"no x realizes valuations {list(mus)} at place {place}")
