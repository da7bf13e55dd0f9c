"""Value-sort reasoning: Z-groups with divisibility predicates and ``oo``.

Value literals are first split on which of their components are ``oo``;
the finite part is then handled as a Presburger problem by Cooper's method.
Keys (value variables and frozen ``v_p(t)`` applications) play the role of
integer unknowns; only the variable being eliminated is ever touched.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import formula as F
from .errors import PlaceqError
from .terms import Key, VApp, ValTerm, VecTerm, key_sort

LE, EQ, NE, DIV = "le", "eq", "ne", "div"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class PAtom:
    """``term <= 0``, ``term = 0``, ``term != 0`` or ``n | term``."""

    kind: str
    term: ValTerm
    n: int = 0

    def coeff(self, k: Key) -> int:
        return self.term.coeff(k)


Conj = FrozenSet[PAtom]
TRUE_ATOM = PAtom(LE, ValTerm())  # 0 <= 0


def make(kind: str, t: ValTerm, n: int = 0):
    """Canonical atom, or ``True``/``False`` when it is ground."""
    if t.inf:
        raise PlaceqError("oo reached the Presburger layer")
    cs = [c for _, c in t.coeffs]
    if kind == DIV:
        if n == 1:
            return True
        t = ValTerm(((k, c % n) for k, c in t.coeffs), t.const % n)
        if not t.coeffs:
            return t.const == 0
        d = n
        for _, c in t.coeffs:
            d = gcd(d, c)
        d = gcd(d, t.const)
        if d > 1:
            t = ValTerm(((k, c // d) for k, c in t.coeffs), t.const // d)
            n //= d
            if n == 1:
                return True
        return PAtom(DIV, t, n)
    if not cs:
        c = t.const
        return {LE: c <= 0, EQ: c == 0, NE: c != 0}[kind]
    g = 0
    for c in cs:
        g = gcd(g, c)
    if kind == LE:
        # sum (c/g) k <= floor(-const/g)
        const = -((-t.const) // g)
        return PAtom(LE, ValTerm(((k, c // g) for k, c in t.coeffs), const))
    if t.const % g:
        return kind == NE
    sign = -1 if cs[0] < 0 else 1
    q = sign * g
    return PAtom(kind, ValTerm(((k, c // q) for k, c in t.coeffs), t.const // q))


def _sub(a: ValTerm, b: ValTerm) -> ValTerm:
    return a + b.scale(-1)


def conj_of(atoms: Iterable) -> Optional[Conj]:
    """Build a simplified conjunction; ``None`` when it is unsatisfiable."""
    out = set()
    for a in atoms:
        if a is True:
            continue
        if a is False:
            return None
        out.add(a)
    return _tighten(out)


def _tighten(atoms: set) -> Optional[Conj]:
    les: Dict[Tuple, int] = {}
    rest = []
    for a in atoms:
        if a.kind == LE:
            key = a.term.coeffs
            les[key] = max(les.get(key, a.term.const), a.term.const)
        else:
            rest.append(a)
    out = set(rest)
    eq_keys = {a.term.coeffs: a.term.const for a in rest if a.kind == EQ}
    for key, c in les.items():
        negkey = tuple((k, -v) for k, v in key)
        if negkey in les:
            # t + c <= 0 and -t + c2 <= 0 give -c2 <= t <= -c
            c2 = les[negkey]
            if c2 > -c:
                return None
            if c2 == -c:
                if key[0][1] > 0:
                    eq = make(EQ, ValTerm(key, c))
                    eq_keys[eq.term.coeffs] = eq.term.const
                    out.add(eq)
                continue
        out.add(PAtom(LE, ValTerm(key, c)))
    for a in list(out):
        if a.kind == LE:
            k = a.term.coeffs
            if k in eq_keys and eq_keys[k] < a.term.const:
                return None
    for a in rest:
        if a.kind == NE and a.term.coeffs in eq_keys and eq_keys[a.term.coeffs] == a.term.const:
            return None
    return frozenset(out)


def _subsume(conjs: List[Conj]) -> List[Conj]:
    uniq = list(dict.fromkeys(conjs))
    uniq.sort(key=len)
    kept: List[Conj] = []
    for c in uniq:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _sorted_conj(c: Conj) -> List[PAtom]:
    return sorted(c, key=lambda a: (a.kind, a.n, a.term.sort_key()))


# ---------------------------------------------------------------- Cooper


def _scale_atom(a: PAtom, m: int) -> PAtom:
    return PAtom(a.kind, a.term.scale(m), a.n * m if a.kind == DIV else 0)


def _subst_atom(a: PAtom, g: Key, t: ValTerm):
    return make(a.kind, a.term.replace_key(g, t), a.n)


def eliminate_conj(c: Conj, g: Key) -> List[Conj]:
    """Disjunction of conjunctions equivalent over Z to ``exists g. c``."""
    with_g = [a for a in c if a.coeff(g)]
    if not with_g:
        return [c]
    rest = [a for a in c if not a.coeff(g)]
    eqs = [a for a in with_g if a.kind == EQ]
    if eqs:
        e = min(eqs, key=lambda a: (abs(a.coeff(g)), a.term.sort_key()))
        cg = e.coeff(g)
        r = ValTerm(((k, v) for k, v in e.term.coeffs if k != g), e.term.const)
        m, sg = abs(cg), (1 if cg > 0 else -1)
        out = list(rest) + [make(DIV, r, m)]
        for a in with_g:
            if a is e:
                continue
            ag = a.coeff(g)
            s = ValTerm(((k, v) for k, v in a.term.coeffs if k != g), a.term.const)
            out.append(make(a.kind, r.scale(-sg * ag) + s.scale(m), a.n * m))
        res = conj_of(out)
        return [] if res is None else [res]

    lcm = 1
    for a in with_g:
        lcm = _lcm(lcm, abs(a.coeff(g)))
    norm: List[PAtom] = []
    for a in with_g:
        norm.append(_scale_atom(a, lcm // abs(a.coeff(g))))
    if lcm > 1:
        norm.append(PAtom(DIV, ValTerm({g: 1}), lcm))

    lowers, uppers, nes, divs = [], [], [], []
    period = 1
    for a in norm:
        cg = a.coeff(g)
        s = ValTerm(((k, v) for k, v in a.term.coeffs if k != g), a.term.const)
        if a.kind == LE:
            if cg > 0:
                uppers.append(s.scale(-1))          # g <= -s
            else:
                lowers.append(s)                    # g >= s
        elif a.kind == NE:
            nes.append(s.scale(-cg))                # g != -cg*s
        else:
            divs.append(a)
            period = _lcm(period, a.n)

    use_lower = len(lowers) + len(nes) <= len(uppers) + len(nes)
    results: List[Conj] = []

    def emit(val: ValTerm, atoms: Sequence[PAtom]):
        res = conj_of(list(rest) + [_subst_atom(a, g, val) for a in atoms])
        if res is not None:
            results.append(res)

    if use_lower:
        if not lowers:
            for j in range(1, period + 1):
                emit(ValTerm((), j), divs)
        points = [lo.shift(-1) for lo in lowers] + [e.shift(-1) for e in nes]
        for b in points:
            for j in range(1, period + 1):
                emit(b.shift(j), norm)
    else:
        if not uppers:
            for j in range(1, period + 1):
                emit(ValTerm((), -j), divs)
        points = [up.shift(1) for up in uppers] + [e.shift(1) for e in nes]
        for b in points:
            for j in range(1, period + 1):
                emit(b.shift(-j), norm)
    return _subsume(results)


def eliminate_keys(conjs: Iterable[Conj], keys: Sequence[Key]) -> List[Conj]:
    cur = list(conjs)
    for g in keys:
        nxt: List[Conj] = []
        for c in cur:
            nxt.extend(eliminate_conj(c, g))
        cur = _subsume(nxt)
    return cur


# ---------------------------------------------------------------- formulas


def literal_to_presburger(lit: F.Formula) -> List[List]:
    """A value literal (all keys finite) as a disjunction of atom lists."""
    positive = not isinstance(lit, F.Not)
    a = lit if positive else lit.arg
    if isinstance(a, F.Const):
        return [[]] if a.value == positive else []
    if isinstance(a, F.ValLe):
        if a.lhs.inf or a.rhs.inf:
            raise PlaceqError("oo reached the Presburger layer")
        if positive:
            return [[make(LE, _sub(a.lhs, a.rhs))]]
        return [[make(LE, _sub(a.rhs, a.lhs).shift(1))]]
    if isinstance(a, F.ValEq):
        if a.lhs.inf or a.rhs.inf:
            raise PlaceqError("oo reached the Presburger layer")
        return [[make(EQ if positive else NE, _sub(a.lhs, a.rhs))]]
    if isinstance(a, F.Div):
        if positive:
            return [[make(DIV, a.term, a.n)]]
        return [[make(DIV, a.term.shift(-r), a.n)] for r in range(1, a.n)]
    raise PlaceqError(f"not a value literal: {lit}")


def literals_to_conjs(lits: Iterable[F.Formula]) -> List[Conj]:
    acc: List[List] = [[]]
    for lit in lits:
        opts = literal_to_presburger(lit)
        acc = [x + y for x in acc for y in opts]
        if not acc:
            return []
    out = []
    for atoms in acc:
        c = conj_of(atoms)
        if c is not None:
            out.append(c)
    return _subsume(out)


def atom_to_formula(a: PAtom) -> F.Formula:
    t = a.term
    if a.kind == DIV:
        return F.div(a.n, t)
    pos = ValTerm((k, c) for k, c in t.coeffs if c > 0)
    neg_ = ValTerm((k, -c) for k, c in t.coeffs if c < 0)
    if t.const >= 0:
        pos = pos.shift(t.const)
    else:
        neg_ = neg_.shift(-t.const)
    if a.kind == LE:
        return F.val_le(pos, neg_)
    if a.kind == EQ:
        return F.val_eq(pos, neg_)
    return F.neg(F.val_eq(pos, neg_))


def conjs_to_formula(conjs: Iterable[Conj]) -> F.Formula:
    return F.disj(*(F.conj(*(atom_to_formula(a) for a in _sorted_conj(c))) for c in conjs))


# ---------------------------------------------------------------- infinity


class Finite:
    """The set of keys known to be finite in the current branch."""

    def __init__(self, keys: Iterable[Key] = ()):
        self.vars: set = set()
        self.terms: set = set()
        for k in keys:
            self.add(k)

    def add(self, k: Key) -> "Finite":
        if isinstance(k, VApp):
            self.terms.add(k.term)
        else:
            self.vars.add(k)
        return self

    def copy(self) -> "Finite":
        out = Finite()
        out.vars, out.terms = set(self.vars), set(self.terms)
        return out

    def __contains__(self, k: Key) -> bool:
        return k.term in self.terms if isinstance(k, VApp) else k in self.vars


def inf_marker(k: Key) -> F.Formula:
    """The literal stating ``k = oo``."""
    if isinstance(k, VApp):
        return F.vec_eq(k.term)
    return F.ValEq(ValTerm.var(k), ValTerm.infinity())


def normalize_literal(lit: F.Formula, finite: Finite) -> F.Formula:
    """Resolve ``s = oo`` literals against the keys known to be finite.

    ``s = oo`` holds iff one of the keys of ``s`` is ``oo``; keys known to be
    finite are dropped, a single remaining valuation key becomes the vector
    equation ``t = 0``.
    """
    positive = not isinstance(lit, F.Not)
    a = lit if positive else lit.arg
    if not (isinstance(a, F.ValEq) and a.rhs.inf):
        return lit
    left = [k for k in a.lhs.keys if k not in finite]
    if not left:
        res = F.FALSE
    elif len(left) == 1:
        res = inf_marker(left[0])
    else:
        res = F.ValEq(ValTerm({k: 1 for k in left}), ValTerm.infinity())
    return res if positive else F.neg(res)


def assume_inf(lits: Sequence[F.Formula], k: Key, pin: Optional[str] = None) -> List[F.Formula]:
    """Literals with ``k`` replaced by ``oo``.

    For a valuation key the same term is ``oo`` at every place, and when
    ``pin`` names a vector variable of that term it is solved for and
    substituted, which lets dependent atoms fold.
    """
    oo = ValTerm.infinity()
    if isinstance(k, VApp):
        t = k.term

        def val_fn(s: ValTerm) -> ValTerm:
            for key in s.keys:
                if isinstance(key, VApp) and key.term == t:
                    s = s.replace_key(key, oo)
            return s
    else:
        def val_fn(s: ValTerm) -> ValTerm:
            return s.replace_key(k, oo)

    sol = None
    if isinstance(k, VApp) and pin is not None and t.coeff(pin):
        c = t.coeff(pin)
        sol = VecTerm(((w, -d / c) for w, d in t.coeffs if w != pin), -t.const / c)
    out = []
    for lit in lits:
        g = F.map_atoms(lit, lambda a: F.rebuild_atom(a, None, val_fn))
        if sol is not None:
            g = F.map_atoms(g, lambda a: F.subst_atom_vec(a, pin, sol))
        out.append(g)
    return out


Branch = Tuple[List[F.Formula], List[F.Formula], Finite]


def split_infinity(lits: Sequence[F.Formula], keys: Sequence[Key],
                   pin_vars: Iterable[str] = (),
                   finite: Optional[Finite] = None) -> List[Branch]:
    """Branch on each key being ``oo`` or finite.

    Returns ``(markers, literals, finite)`` triples covering all cases;
    valuation keys with the same term are split together.  ``pin_vars`` are
    the vector variables preferred for substitution when a term is forced to
    zero.  Literals are kept in normalized form.
    """
    pins = list(pin_vars)
    groups: List[Key] = []
    seen_terms = set()
    for k in keys:
        if isinstance(k, VApp):
            if k.term in seen_terms:
                continue
            seen_terms.add(k.term)
        groups.append(k)

    out: List[Branch] = []

    def norm(cur, fin):
        return [normalize_literal(l, fin) for l in cur]

    def rec(i: int, markers: List[F.Formula], cur: List[F.Formula], fin: Finite):
        if any(l == F.FALSE for l in cur):
            return
        if i == len(groups):
            out.append((markers, cur, fin))
            return
        k = groups[i]
        if k in fin:
            rec(i + 1, markers, cur, fin)
            return
        marker = inf_marker(k)
        pin = None
        if isinstance(k, VApp):
            cand = [v for v in pins if k.term.coeff(v)] or sorted(k.term.vars)
            pin = cand[0] if cand else None
        rec(i + 1, markers + [marker], norm(assume_inf(cur, k, pin), fin), fin)
        fin2 = fin.copy().add(k)
        rec(i + 1, markers + [F.neg(marker)], norm(cur, fin2), fin2)

    start = finite.copy() if finite is not None else Finite()
    rec(0, [], norm(lits, start), start)
    return out


def infinity_split(f: F.Formula) -> F.Formula:
    """Equivalent formula in which every value atom is ``oo``-free, guarded
    by markers fixing which keys are ``oo``."""
    f = F.to_nnf(f)
    keys = sorted({k for a in F.atoms(f) for s in F.atom_val_terms(a) for k in s.keys},
                  key=key_sort)
    parts = []
    for markers, lits, fin in split_infinity([f], keys):
        body = F.map_atoms(lits[0], lambda a: normalize_literal(a, fin))
        parts.append(F.conj(*markers, body))
    return F.disj(*parts)


# ---------------------------------------------------------------- elimination


def is_value_literal(lit: F.Formula) -> bool:
    a = lit.arg if isinstance(lit, F.Not) else lit
    return isinstance(a, F.VALUE_ATOMS)


def literal_keys(lit: F.Formula) -> set:
    a = lit.arg if isinstance(lit, F.Not) else lit
    return {k for s in F.atom_val_terms(a) for k in s.keys}


def eliminate_val_var(f: F.Formula, g: str) -> F.Formula:
    """Quantifier-free equivalent of ``exists g. f`` for a value variable."""
    parts = []
    for clause in F.simplify_clauses(F.dnf_clauses(f)):
        parts.append(_elim_val_clause(list(clause), g))
    return F.disj(*parts)


def _elim_val_clause(lits: List[F.Formula], g: str) -> F.Formula:
    if not any(g in literal_keys(l) for l in lits):
        return F.conj(*lits)
    results = [F.conj(*assume_inf(lits, g))]
    fin = Finite([g])
    cur = [normalize_literal(l, fin) for l in lits]
    mine = [l for l in cur if g in literal_keys(l)]
    others = [k for l in mine for k in sorted(literal_keys(l), key=key_sort) if k != g]
    for markers, branch, _ in split_infinity(cur, list(dict.fromkeys(others)), finite=fin):
        results.append(F.conj(*markers, cooper_literals(branch, [g])))
    return F.disj(*results)


def cooper_literals(lits: List[F.Formula], gs: Sequence[Key]) -> F.Formula:
    """Eliminate the finite integer unknowns ``gs`` from a clause whose
    literals mentioning them are ``oo``-free."""
    if any(l == F.FALSE for l in lits):
        return F.FALSE
    gset = set(gs)
    mine = [l for l in lits if literal_keys(l) & gset]
    rest = [l for l in lits if not literal_keys(l) & gset]
    conjs = literals_to_conjs(mine)
    return F.conj(*rest, conjs_to_formula(eliminate_keys(conjs, list(gs))))


def decide_ground_val(f: F.Formula) -> bool:
    """Truth value of a variable-free value formula."""
    if F.free_vars(f):
        raise PlaceqError("decide_ground_val needs a ground formula")
    return F.evaluate(f, {}, {})


# ---------------------------------------------------------------- models


def _holds(a: PAtom, env: Dict[Key, int]) -> bool:
    t = a.term.const + sum(c * env[k] for k, c in a.term.coeffs)
    if a.kind == LE:
        return t <= 0
    if a.kind == EQ:
        return t == 0
    if a.kind == NE:
        return t != 0
    return t % a.n == 0


def _solve_one(conjs: List[Conj], g: Key) -> Optional[int]:
    lo, hi, period = 0, 0, 1
    for c in conjs:
        for a in c:
            cg = a.coeff(g)
            if a.kind == DIV:
                period = _lcm(period, a.n)
            elif cg:
                p = (-a.term.const) // cg
                lo, hi = min(lo, p - 1), max(hi, p + 1)
    cand = sorted(range(lo - period - 1, hi + period + 2), key=lambda v: (abs(v), v))
    for v in cand:
        env = {g: v}
        if any(all(_holds(a, env) for a in c) for c in conjs):
            return v
    return None


def presburger_model(conjs: List[Conj], keys: Sequence[Key]) -> Optional[Dict[Key, int]]:
    """An integer assignment to ``keys`` satisfying one of ``conjs``.

    Every atom must only mention ``keys``.  The values are found one at a
    time: project onto the first key, search a window that is complete for
    one-variable Presburger formulas, substitute, and recurse.
    """
    keys = list(keys)
    for c in conjs:
        m = _model_conj(c, keys)
        if m is not None:
            return m
    return None


def _model_conj(c: Conj, keys: List[Key]) -> Optional[Dict[Key, int]]:
    if not keys:
        return {} if all(_holds(a, {}) for a in c) else None
    g, rest = keys[0], keys[1:]
    projected = eliminate_keys([c], list(reversed(rest)))
    v = _solve_one(projected, g)
    if v is None:
        return None
    sub = conj_of(_subst_atom(a, g, ValTerm((), v)) for a in c)
    if sub is None:
        return None
    m = _model_conj(sub, rest)
    if m is None:
        return None
    m[g] = v
    return m
