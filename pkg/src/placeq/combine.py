"""Top-level elimination, decision and witness construction.

Quantifiers are removed innermost first, one variable at a time; a
universal quantifier is treated as a negated existential.  For a vector
variable ``x`` each DNF clause is handled as follows:

1. an equation in ``x`` is solved and substituted;
2. ``x`` equal to a center of some ``v_p(. x + .)`` is a separate branch
   (solved by substitution); otherwise every such valuation is finite;
3. the valuation literals become a sphere system per place, all ``mu``'s go
   into one Presburger problem (see :mod:`placeq.padic`);
4. order literals bound ``x`` on the real line.  When ``x`` also meets
   valuation literals or disequations, the solution set at every place is
   open, so by weak approximation a solution exists as soon as the bounds
   leave an open interval and the valuation part is satisfiable; the
   degenerate interval is covered by substituting the non-strict lower
   bounds.  Without such literals this is plain Fourier-Motzkin.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import formula as F
from . import presburger as PB
from . import real as R
from .errors import DnfTooLarge, NoWitnessError, PlaceqError, SignatureError, UnsupportedConstruct
from .interpret import l_to_order, surface_to_value
from .prune import consistent
from .padic import (center_of, normalize_to_centers, patterns, sphere_part, witness_finite,
                    x_keys)
from .rational import INF, ValInt, next_prime_not_in, small_rationals, vp
from .terms import REAL, Place, VApp, ValTerm, VecTerm

DEFAULT_MAX_BLOCK = 6
# largest disjunctive normal form built while eliminating
DNF_LIMIT = 5000
# the final clean-up pass is optional, so it gets a smaller budget
TIDY_LIMIT = 400


# ---------------------------------------------------------------- signatures


@dataclass(frozen=True)
class Signature:
    """``s0``: places where ``L`` (and valuations) are available; ``s1``:
    finite places where ``M`` and ``Q`` are also available."""

    s0: FrozenSet[Place]
    s1: FrozenSet[Place]

    def __post_init__(self):
        if any(not p.is_finite for p in self.s1):
            raise SignatureError("M/Q places must be finite")
        if not self.s1 <= self.s0:
            raise SignatureError("M/Q places must be among the L places")

    @classmethod
    def of(cls, places: Iterable, m_places: Optional[Iterable] = None) -> "Signature":
        s0 = frozenset(p if isinstance(p, Place) else Place.parse(str(p)) for p in places)
        if m_places is None:
            s1 = frozenset(p for p in s0 if p.is_finite)
        else:
            s1 = frozenset(p if isinstance(p, Place) else Place.parse(str(p)) for p in m_places)
        return cls(s0, s1)

    @classmethod
    def parse(cls, places: str, m_places: Optional[str] = None) -> "Signature":
        def split(text):
            return [t for t in (s.strip() for s in text.split(",")) if t]
        return cls.of(split(places), None if m_places is None else split(m_places))

    @classmethod
    def for_formula(cls, f: F.Formula) -> "Signature":
        return cls.of(F.places_of(f))

    def check(self, f: F.Formula) -> None:
        for a in F.atoms(f):
            if isinstance(a, (F.MAtom, F.QAtom)):
                if not a.place.is_finite:
                    raise UnsupportedConstruct(
                        f"{type(a).__name__[0]}[inf] is outside every decidable fragment")
                if a.place not in self.s1:
                    raise SignatureError(f"{type(a).__name__[0]}[{a.place}] needs place "
                                         f"{a.place} among the M/Q places")
        for p in F.places_of(f):
            if p not in self.s0:
                raise SignatureError(f"place {p} is not in the signature")


def prepare(f: F.Formula, signature: Optional[Signature] = None) -> F.Formula:
    """Check the signature and rewrite surface atoms into engine atoms:
    valuation atoms at finite places, order atoms at the real place."""
    sig = signature or Signature.for_formula(f)
    sig.check(f)
    f = l_to_order(f)
    f = F.map_atoms(f, surface_to_value)
    return F.alpha_rename(f)


def _check_blocks(f: F.Formula, max_block: int) -> None:
    def walk(g: F.Formula, kind, run: int):
        if isinstance(g, F.Quant):
            k = (type(g), g.sort)
            run = run + 1 if k == kind else 1
            if g.sort == F.VEC and run > max_block:
                raise UnsupportedConstruct(
                    f"quantifier block with more than {max_block} vector variables")
            walk(g.body, k, run)
            return
        for h in F.children(g):
            walk(h, None, 0)
    walk(f, None, 0)


# ---------------------------------------------------------------- elimination


def eliminate(f: F.Formula, signature: Optional[Signature] = None,
              max_block: int = DEFAULT_MAX_BLOCK) -> F.Formula:
    """Quantifier-free formula equivalent to ``f`` over Q."""
    _check_blocks(f, max_block)
    return _tidy(eliminate_prepared(prepare(f, signature)))


def eliminate_prepared(f: F.Formula) -> F.Formula:
    if isinstance(f, F.Atom):
        return f
    if isinstance(f, F.Not):
        return F.neg(eliminate_prepared(f.arg))
    if isinstance(f, F.And):
        return F.conj(*(eliminate_prepared(g) for g in f.args))
    if isinstance(f, F.Or):
        return F.disj(*(eliminate_prepared(g) for g in f.args))
    if isinstance(f, F.Implies):
        return F.disj(F.neg(eliminate_prepared(f.lhs)), eliminate_prepared(f.rhs))
    if isinstance(f, F.Exists):
        return exists_qf(f.var, f.sort, eliminate_prepared(f.body))
    if isinstance(f, F.Forall):
        return F.neg(exists_qf(f.var, f.sort, F.neg(eliminate_prepared(f.body))))
    raise TypeError(f)


def eliminate_block(f: F.Formula, signature: Optional[Signature] = None) -> F.Formula:
    """Eliminate a leading block of existential quantifiers."""
    return eliminate(f, signature)


def exists_qf(x: str, sort: str, body: F.Formula) -> F.Formula:
    """``exists x. body`` for quantifier-free ``body``."""
    if x not in F.free_vars(body):
        return body
    if sort == F.VAL:
        return _tidy(PB.eliminate_val_var(body, x))
    parts = [exists_vec_clause(list(c), x)
             for c in F.simplify_clauses(F.dnf_clauses(body, consistent, DNF_LIMIT))]
    return _tidy(F.disj(*parts))


def _tidy(f: F.Formula) -> F.Formula:
    try:
        return F.clauses_to_formula(F.simplify_clauses(F.dnf_clauses(f, consistent, TIDY_LIMIT)))
    except DnfTooLarge:
        return f


def _subst_all(lits: Sequence[F.Formula], x: str, t: VecTerm) -> F.Formula:
    return F.conj(*(F.substitute(l, x, t) for l in lits))


def exists_vec_clause(lits: List[F.Formula], x: str) -> F.Formula:
    """``exists x`` of a conjunction of literals."""
    if not any(x in F.free_vars(l) for l in lits):
        return F.conj(*lits)
    for lit in lits:
        if isinstance(lit, F.VecEq) and lit.term.coeff(x):
            return _subst_all([l for l in lits if l is not lit], x, R.solve_for(lit.term, x))

    parts: List[F.Formula] = []
    vkeys = [k for l in lits for k in x_keys(l, x)]
    roots: List[VecTerm] = []
    for k in vkeys:
        d, _ = center_of(k, x)
        if d not in roots:
            roots.append(d)
    for d in roots:
        parts.append(_subst_all(lits, x, d))

    fin = PB.Finite(vkeys)
    cur = [PB.normalize_literal(l, fin) for l in lits]
    if F.FALSE in cur:
        return F.disj(*parts)
    cur = [l for l in cur if l != F.TRUE]
    value_lits = [l for l in cur if x_keys(l, x)]
    diseqs = [l for l in cur if isinstance(l, F.Not) and isinstance(l.arg, F.VecEq)
              and l.arg.term.coeff(x)]
    others = [l for l in cur if l not in value_lits and l not in diseqs]
    lowers, uppers, rest = R.bounds(others, x)
    for l in rest:
        if x in F.free_vars(l):
            raise PlaceqError(f"cannot eliminate {x} from literal {l}")
    if not value_lits and not diseqs:
        parts.append(F.conj(*rest, R.fourier_motzkin(lowers, uppers)))
        return F.disj(*parts)
    avoid = set().union(*(F.all_vars(l) for l in lits)) | {x}
    spheres = sphere_part(value_lits, x, avoid) if value_lits else F.TRUE
    parts.append(F.conj(*rest, R.interior(lowers, uppers), spheres))
    if lowers and uppers:
        for b in lowers:
            if not b.strict:
                parts.append(_subst_all(lits, x, b.term))
    return F.disj(*parts)


# ---------------------------------------------------------------- decision


def decide(f: F.Formula, signature: Optional[Signature] = None,
           max_block: int = DEFAULT_MAX_BLOCK) -> bool:
    """Truth value over Q of the sentence ``f``."""
    (signature or Signature.for_formula(f)).check(f)
    free = F.free_vars(f)
    if free:
        raise UnsupportedConstruct(f"decide needs a sentence; free: {', '.join(sorted(free))}")
    g = eliminate(f, signature, max_block)
    if not isinstance(g, F.Const):
        g = F.Const(F.evaluate(g, {}, {}))
    return g.value


# ---------------------------------------------------------------- decoupling


def split_by_place(lits: Sequence[F.Formula]) -> Tuple[List[F.Formula], Dict[Place, List[F.Formula]]]:
    """Shared linear part and per-place buckets of a conjunction."""
    shared: List[F.Formula] = []
    buckets: Dict[Place, List[F.Formula]] = {}
    for l in lits:
        a = l.arg if isinstance(l, F.Not) else l
        places = set()
        if isinstance(a, F.SURFACE):
            places.add(a.place)
        elif isinstance(a, F.Order):
            places.add(REAL)
        for s in F.atom_val_terms(a):
            places |= {k.place for k in s.keys if isinstance(k, VApp)}
        if not places:
            shared.append(l)
        elif len(places) == 1:
            buckets.setdefault(places.pop(), []).append(l)
        else:
            raise UnsupportedConstruct(f"literal {l} mixes places")
    return shared, buckets


# ---------------------------------------------------------------- witnesses


WITNESS_SEARCH_BOUND = 12


def _univariate_points(h: F.Formula, x: str) -> List[Fraction]:
    pts: List[Fraction] = []
    for a in F.atoms(h):
        for t in F.atom_vec_terms(a):
            if t.coeff(x):
                pts.append(R.solve_for(t, x).const)
        for s in F.atom_val_terms(a):
            for k in s.keys:
                if isinstance(k, VApp) and k.term.coeff(x):
                    pts.append(center_of(k, x)[0].const)
    return list(dict.fromkeys(pts))


def solve_value_var(h: F.Formula, g: str) -> ValInt:
    """A value in ``Z u {oo}`` for the only free variable ``g`` of ``h``."""
    if F.evaluate(h, {}, {g: INF}):
        return INF
    fin = PB.Finite([g])
    for clause in F.simplify_clauses(F.dnf_clauses(h, consistent)):
        lits = [PB.normalize_literal(l, fin) for l in clause]
        if F.FALSE in lits:
            continue
        conjs = PB.literals_to_conjs([l for l in lits if l != F.TRUE])
        m = PB.presburger_model(conjs, [g])
        if m is not None and F.evaluate(h, {}, {g: m[g]}):
            return m[g]
    raise NoWitnessError(f"no value for {g}")


def solve_vector_var(h: F.Formula, x: str) -> Fraction:
    """A rational for the only free variable ``x`` of ``h``."""
    pts = _univariate_points(h, x)
    for v in pts:
        if F.evaluate(h, {x: v}, {}):
            return v
    for v in small_rationals(WITNESS_SEARCH_BOUND):
        if F.evaluate(h, {x: v}, {}):
            return v
    for clause in F.simplify_clauses(F.dnf_clauses(h, consistent)):
        v = _solve_clause(h, list(clause), x, pts)
        if v is not None:
            return v
    raise NoWitnessError(f"no rational value for {x}")


def _solve_clause(h: F.Formula, lits: List[F.Formula], x: str,
                  pts: List[Fraction]) -> Optional[Fraction]:
    vkeys = [k for l in lits for k in x_keys(l, x)]
    fin = PB.Finite(vkeys)
    lits = [PB.normalize_literal(l, fin) for l in lits]
    if F.FALSE in lits:
        return None
    lits = [l for l in lits if l != F.TRUE]
    lo, lo_s, hi, hi_s = R.interval(lits, x, {})
    if lo is not None and hi is not None and lo >= hi:
        return None
    value_lits = [l for l in lits if x_keys(l, x)]

    def check(v: Fraction) -> bool:
        return F.evaluate(h, {x: v}, {})

    if not value_lits:
        v = R.pick_in_interval(lo, lo_s, hi, hi_s, avoid=pts)
        return v if v is not None and check(v) else None
    system = normalize_to_centers(value_lits, x, {x})
    for pat in patterns(system):
        conjs = PB.literals_to_conjs(system.literals + pat)
        model = PB.presburger_model(conjs, system.mus)
        if model is None:
            continue
        targets = []
        for p, cs in sorted(system.centers.items()):
            centers = [d.const for d, _ in cs]
            mus = [model[m] for _, m in cs]
            targets.append((p.prime, witness_finite(p, centers, mus), max(mus) + 1))
        v = approximate(targets, (lo, lo_s, hi, hi_s), pts, check)
        if v is not None:
            return v
    return None


def approximate(targets: Sequence[Tuple[int, Fraction, int]], interval,
                avoid: Sequence[Fraction], check) -> Optional[Fraction]:
    """A rational ``y`` with ``v_p(y - x_p) >= N_p`` for every target
    ``(p, x_p, N_p)``, inside the real interval, off the ``avoid`` points and
    accepted by ``check``.

    A CRT solution ``y0`` is moved along ``y0 + K*a/q^m`` where
    ``K = prod p^max(N_p, 0)`` and ``q`` is a prime outside the targets, so
    every step keeps the p-adic conditions.
    """
    lo, lo_s, hi, hi_s = interval
    bad = set(avoid)

    def inside(v: Fraction) -> bool:
        if lo is not None and (v < lo or (lo_s and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_s and v == hi)):
            return False
        return True

    def ok(v: Fraction) -> bool:
        return inside(v) and v not in bad and check(v)

    if not targets:
        v = R.pick_in_interval(lo, lo_s, hi, hi_s, avoid=avoid)
        return v if v is not None and ok(v) else None

    exps = {}
    for p, xp, n in targets:
        v0 = vp(xp, p) if xp != 0 else 0
        exps[p] = max(0, -v0, -n)
    big_e = 1
    for p, e in exps.items():
        big_e *= p ** e
    z, mod = 0, 1
    for p, xp, n in targets:
        m = p ** (n + exps[p])
        if m == 1:
            continue
        val = big_e * Fraction(xp)
        r = val.numerator * pow(val.denominator, -1, m) % m
        # combine z (mod mod) with r (mod m)
        t = ((r - z) * pow(mod, -1, m)) % m
        z, mod = z + mod * t, mod * m
    if z > mod // 2:
        z -= mod
    y0 = Fraction(z, big_e)
    if ok(y0):
        return y0
    k = 1
    for p, _, n in targets:
        k *= p ** max(n, 0)
    q = next_prime_not_in({p for p, _, _ in targets})
    if lo is not None and hi is not None:
        target, radius = (lo + hi) / 2, (hi - lo) / 2
    elif lo is not None:
        target, radius = lo + 1, Fraction(1)
    elif hi is not None:
        target, radius = hi - 1, Fraction(1)
    else:
        target, radius = y0, None
    for m in range(0, 200):
        step = Fraction(k, q ** m)
        if radius is not None and step >= radius:
            continue
        a0 = floor((target - y0) / step)
        for j in range(0, 40):
            for a in ((a0 + j, a0 - j) if j else (a0,)):
                v = y0 + a * step
                if ok(v):
                    return v
        if radius is None:
            break
    return None


def witness(f: F.Formula, signature: Optional[Signature] = None,
            env: Optional[Mapping[str, object]] = None) -> Dict[str, object]:
    """Values for the leading existential block of ``f`` making it true.

    ``env`` fixes the free variables.  Each variable is chosen in turn from
    the quantifier-free equivalent of the remaining suffix, then the body is
    checked exactly.
    """
    g = prepare(f, signature)
    block: List[Tuple[str, str]] = []
    body = g
    while isinstance(body, F.Exists):
        block.append((body.var, body.sort))
        body = body.body
    vec_env: Dict[str, Fraction] = {}
    val_env: Dict[str, ValInt] = {}
    free = F.free_vars(g)
    for k, v in (env or {}).items():
        if free.get(k) == F.VAL:
            val_env[k] = v if v is INF else int(v)
        else:
            vec_env[k] = Fraction(v)
    out: Dict[str, object] = {}
    for i, (x, sort) in enumerate(block):
        inner = body
        for y, s in reversed(block[i + 1:]):
            inner = F.Exists(y, s, inner)
        h = eliminate_prepared(F.specialize(inner, vec_env, val_env))
        extra = set(F.free_vars(h)) - {x}
        if extra:
            raise PlaceqError(f"unassigned free variables: {', '.join(sorted(extra))}")
        # deciding the closed suffix first is much cheaper than a failed search
        if not F.evaluate(exists_qf(x, sort, h), {}, {}):
            raise NoWitnessError(f"no value for {x}")
        if sort == F.VAL:
            v = solve_value_var(h, x)
            val_env[x] = v
        else:
            v = solve_vector_var(h, x)
            vec_env[x] = v
        out[x] = v
    if not F.evaluate(eliminate_prepared(F.specialize(body, vec_env, val_env)), {}, {}):
        raise PlaceqError("witness failed the exact check")
    return out


def witness_point(body: F.Formula, x: str, sort: str, vec_env: Mapping[str, Fraction],
                  val_env: Mapping[str, ValInt]):
    """A value for ``x`` making the prepared formula ``body`` true under the
    assignment, or ``None`` when there is none."""
    h = F.specialize(eliminate_prepared(F.specialize(body, vec_env, val_env)), {}, {})
    try:
        if sort == F.VAL:
            return solve_value_var(h, x)
        return solve_vector_var(h, x)
    except NoWitnessError:
        return None
