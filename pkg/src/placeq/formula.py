"""Sorted formulas over the two-sorted and one-sorted signatures.

Atoms are built through the lower-case constructors (``vec_eq``, ``val_le``,
...), which canonicalize their arguments and fold ground atoms to ``TRUE`` or
``FALSE``.  ``conj``/``disj``/``neg`` flatten and absorb constants.

Value-sort semantics: a value term is ``oo`` as soon as one of its
components is ``oo``.  ``P_n(oo)`` holds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DnfTooLarge, IllSortedError, PlaceqError
from .rational import INF, ValInt, abs_le_inf, vp
from .terms import REAL, Key, Place, VApp, ValTerm, VecTerm

VEC, VAL = "vec", "val"


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .printer import to_text
        return to_text(self)

    def __and__(self, other: "Formula") -> "Formula":
        return conj(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return disj(self, other)

    def __invert__(self) -> "Formula":
        return neg(self)


class Atom(Formula):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Const(Atom):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class VecEq(Atom):
    """``term = 0``."""
    term: VecTerm


@dataclass(frozen=True)
class Order(Atom):
    """``term > 0`` if strict, else ``term >= 0`` (real order)."""
    term: VecTerm
    strict: bool


@dataclass(frozen=True)
class ValLe(Atom):
    lhs: ValTerm
    rhs: ValTerm


@dataclass(frozen=True)
class ValEq(Atom):
    lhs: ValTerm
    rhs: ValTerm


@dataclass(frozen=True)
class Div(Atom):
    """``P_n(term)``: ``term`` lies in ``nZ u {oo}``."""
    n: int
    term: ValTerm


@dataclass(frozen=True)
class LAtom(Atom):
    place: Place
    t1: VecTerm
    t2: VecTerm


@dataclass(frozen=True)
class MAtom(Atom):
    place: Place
    t1: VecTerm
    t2: VecTerm
    t3: VecTerm


@dataclass(frozen=True)
class QAtom(Atom):
    place: Place
    n: int
    term: VecTerm


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    sort: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    sort: str
    body: Formula


Quant = (Exists, Forall)
SURFACE = (LAtom, MAtom, QAtom)
VALUE_ATOMS = (ValLe, ValEq, Div)

# ---------------------------------------------------------------- constructors


def vec_eq(t: VecTerm) -> Formula:
    if t.is_const():
        return Const(t.const == 0)
    return VecEq(t.monic()[1])


def order(t: VecTerm, strict: bool = False) -> Formula:
    if t.is_const():
        return Const(t.const > 0 if strict else t.const >= 0)
    return Order(t.scale(1 / abs(t.leading())), strict)


def _cmp_ground(a: ValInt, b: ValInt) -> bool:
    return a <= b if a is not INF else b is INF


def val_le(a: ValTerm, b: ValTerm) -> Formula:
    if b.inf:
        return TRUE
    if a.is_ground() and b.is_ground():
        return Const(_cmp_ground(a.ground_value(), b.ground_value()))
    if a.inf:
        return val_eq(b, a)
    return ValLe(a, b)


def val_eq(a: ValTerm, b: ValTerm) -> Formula:
    if a.is_ground() and b.is_ground():
        return Const(a == b)
    if a.inf or b.inf:
        # s = oo iff one of the keys of s is oo
        s = b if a.inf else a
        if len(s.coeffs) == 1 and isinstance(s.coeffs[0][0], VApp):
            return vec_eq(s.coeffs[0][0].term)
        return ValEq(ValTerm({k: 1 for k in s.keys}), ValTerm.infinity())
    if a.inf or (not b.inf and b.sort_key() < a.sort_key()):
        a, b = b, a
    return ValEq(a, b)


def div(n: int, s: ValTerm) -> Formula:
    if n < 1:
        raise PlaceqError(f"P_n needs n >= 1, got {n}")
    if n == 1 or s.inf:
        return TRUE
    if s.is_ground():
        return Const(s.const % n == 0)
    return Div(n, ValTerm(((k, (c - 1) % n + 1) for k, c in s.coeffs), s.const % n))


def _ground(*ts: VecTerm) -> bool:
    return all(t.is_const() for t in ts)


def l_atom(place: Place, t1: VecTerm, t2: VecTerm) -> Formula:
    if _ground(t1, t2):
        return Const(eval_l(place, t1.const, t2.const))
    return LAtom(place, t1, t2)


def m_atom(place: Place, t1: VecTerm, t2: VecTerm, t3: VecTerm) -> Formula:
    if _ground(t1, t2, t3):
        return Const(eval_m(place, t1.const, t2.const, t3.const))
    return MAtom(place, t1, t2, t3)


def q_atom(place: Place, n: int, t: VecTerm) -> Formula:
    if n < 1:
        raise PlaceqError(f"Q_n needs n >= 1, got {n}")
    if t.is_const():
        return Const(eval_q(place, n, t.const))
    return QAtom(place, n, t)


def eval_l(place: Place, a: Fraction, b: Fraction) -> bool:
    if place.is_finite:
        va, vb = vp(a, place.prime), vp(b, place.prime)
        return _cmp_ground(vb, va)
    return abs_le_inf(a, b)


def eval_m(place: Place, a: Fraction, b: Fraction, c: Fraction) -> bool:
    if place.is_finite:
        return vp(a * b, place.prime) == vp(c, place.prime)
    return abs(a * b) == abs(c)


def eval_q(place: Place, n: int, a: Fraction) -> bool:
    if not place.is_finite:
        # |a| = |y|^n over Q: |a| must be an n-th power of a rational
        return _is_nth_power(abs(a.numerator), n) and _is_nth_power(a.denominator, n)
    va = vp(a, place.prime)
    return va is INF or va % n == 0


def _is_nth_power(m: int, n: int) -> bool:
    lo, hi = 0, 1
    while hi ** n < m:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < m:
            lo = mid + 1
        else:
            hi = mid
    return lo ** n == m


def eval_atom(a: Atom, vec_env: Mapping[str, Fraction],
              val_env: Mapping[str, ValInt]) -> bool:
    """Exact truth value of an atom under total assignments."""
    if isinstance(a, Const):
        return a.value
    if isinstance(a, VecEq):
        return a.term.evaluate(vec_env) == 0
    if isinstance(a, Order):
        x = a.term.evaluate(vec_env)
        return x > 0 if a.strict else x >= 0
    if isinstance(a, (ValLe, ValEq)):
        x = a.lhs.evaluate(vec_env, val_env)
        y = a.rhs.evaluate(vec_env, val_env)
        return _cmp_ground(x, y) if isinstance(a, ValLe) else x == y
    if isinstance(a, Div):
        x = a.term.evaluate(vec_env, val_env)
        return x is INF or x % a.n == 0
    if isinstance(a, LAtom):
        return eval_l(a.place, a.t1.evaluate(vec_env), a.t2.evaluate(vec_env))
    if isinstance(a, MAtom):
        return eval_m(a.place, a.t1.evaluate(vec_env), a.t2.evaluate(vec_env),
                      a.t3.evaluate(vec_env))
    if isinstance(a, QAtom):
        return eval_q(a.place, a.n, a.term.evaluate(vec_env))
    raise TypeError(a)


def evaluate(f: Formula, vec_env: Mapping[str, Fraction],
             val_env: Mapping[str, ValInt]) -> bool:
    """Exact truth value of a quantifier-free formula.

    Raises ``KeyError`` when a free variable is unassigned.
    """
    if isinstance(f, Atom):
        return eval_atom(f, vec_env, val_env)
    if isinstance(f, Not):
        return not evaluate(f.arg, vec_env, val_env)
    if isinstance(f, And):
        return all(evaluate(g, vec_env, val_env) for g in f.args)
    if isinstance(f, Or):
        return any(evaluate(g, vec_env, val_env) for g in f.args)
    if isinstance(f, Implies):
        return (not evaluate(f.lhs, vec_env, val_env)) or evaluate(f.rhs, vec_env, val_env)
    raise PlaceqError("evaluate needs a quantifier-free formula")


def neg(f: Formula) -> Formula:
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def _flatten(kind, fs: Iterable[Formula]) -> List[Formula]:
    out: List[Formula] = []
    seen = set()
    for f in fs:
        parts = f.args if isinstance(f, kind) else (f,)
        for g in parts:
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def _complementary(args: List[Formula]) -> bool:
    s = set(args)
    return any(isinstance(f, Not) and f.arg in s for f in args)


def conj(*fs: Formula) -> Formula:
    args = [f for f in _flatten(And, fs) if f != TRUE]
    if FALSE in args or _complementary(args):
        return FALSE
    if not args:
        return TRUE
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*fs: Formula) -> Formula:
    args = [f for f in _flatten(Or, fs) if f != FALSE]
    if TRUE in args or _complementary(args):
        return TRUE
    if not args:
        return FALSE
    return args[0] if len(args) == 1 else Or(tuple(args))


def conj_all(fs: Iterable[Formula]) -> Formula:
    return conj(*fs)


def disj_all(fs: Iterable[Formula]) -> Formula:
    return disj(*fs)


def implies(a: Formula, b: Formula) -> Formula:
    return Implies(a, b)


def exists(var: str, sort: str, body: Formula) -> Formula:
    return Exists(var, sort, body)


def forall(var: str, sort: str, body: Formula) -> Formula:
    return Forall(var, sort, body)


# ---------------------------------------------------------------- traversal


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, Implies):
        return (f.lhs, f.rhs)
    if isinstance(f, Quant):
        return (f.body,)
    return ()


def atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    else:
        for g in children(f):
            yield from atoms(g)


def atom_vec_terms(a: Atom) -> Tuple[VecTerm, ...]:
    if isinstance(a, (VecEq, Order)):
        return (a.term,)
    if isinstance(a, LAtom):
        return (a.t1, a.t2)
    if isinstance(a, MAtom):
        return (a.t1, a.t2, a.t3)
    if isinstance(a, QAtom):
        return (a.term,)
    return ()


def atom_val_terms(a: Atom) -> Tuple[ValTerm, ...]:
    if isinstance(a, (ValLe, ValEq)):
        return (a.lhs, a.rhs)
    if isinstance(a, Div):
        return (a.term,)
    return ()


def atom_vars(a: Atom) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for t in atom_vec_terms(a):
        for v in t.vars:
            out[v] = VEC
    for s in atom_val_terms(a):
        for v in s.vec_vars:
            out[v] = VEC
        for v in s.val_vars:
            out[v] = VAL
    return out


def free_vars(f: Formula) -> Dict[str, str]:
    """Free variables with their sorts."""
    if isinstance(f, Atom):
        return atom_vars(f)
    if isinstance(f, Quant):
        inner = free_vars(f.body)
        inner.pop(f.var, None)
        return inner
    out: Dict[str, str] = {}
    for g in children(f):
        out.update(free_vars(g))
    return out


def all_vars(f: Formula) -> set:
    out = set()
    for a in atoms(f):
        out |= atom_vars(a).keys()

    def binders(g):
        if isinstance(g, Quant):
            out.add(g.var)
        for h in children(g):
            binders(h)
    binders(f)
    return out


def places_of(f: Formula) -> set:
    out = set()
    for a in atoms(f):
        if isinstance(a, SURFACE):
            out.add(a.place)
        for s in atom_val_terms(a):
            for k in s.keys:
                if isinstance(k, VApp):
                    out.add(k.place)
    return out


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Quant):
        return False
    return all(is_quantifier_free(g) for g in children(f))


def check_sorts(f: Formula, free_sorts: Optional[Mapping[str, str]] = None) -> None:
    """Raise :class:`IllSortedError` when a variable is used at both sorts."""
    env = dict(free_sorts or {})

    def walk(g: Formula, scope: Dict[str, str]):
        if isinstance(g, Atom):
            for v, s in atom_vars(g).items():
                known = scope.get(v)
                if known is None:
                    scope[v] = s
                elif known != s:
                    raise IllSortedError(f"variable {v!r} used as {s}, declared {known}")
            return
        if isinstance(g, Quant):
            inner = dict(scope)
            inner[g.var] = g.sort
            walk(g.body, inner)
            for v, s in inner.items():
                if v != g.var and v not in scope:
                    scope[v] = s
            return
        for h in children(g):
            walk(h, scope)

    walk(f, env)


# ---------------------------------------------------------------- substitution


def map_atoms(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, Not):
        return neg(map_atoms(f.arg, fn))
    if isinstance(f, And):
        return conj(*(map_atoms(g, fn) for g in f.args))
    if isinstance(f, Or):
        return disj(*(map_atoms(g, fn) for g in f.args))
    if isinstance(f, Implies):
        return Implies(map_atoms(f.lhs, fn), map_atoms(f.rhs, fn))
    if isinstance(f, Quant):
        return type(f)(f.var, f.sort, map_atoms(f.body, fn))
    raise TypeError(f)


def rebuild_atom(a: Atom, vec_fn=None, val_fn=None) -> Formula:
    """Rebuild ``a`` through its canonical constructor after mapping terms."""
    vf = vec_fn or (lambda t: t)
    sf = val_fn or (lambda s: s)
    if isinstance(a, Const):
        return a
    if isinstance(a, VecEq):
        return vec_eq(vf(a.term))
    if isinstance(a, Order):
        return order(vf(a.term), a.strict)
    if isinstance(a, ValLe):
        return val_le(sf(a.lhs), sf(a.rhs))
    if isinstance(a, ValEq):
        return val_eq(sf(a.lhs), sf(a.rhs))
    if isinstance(a, Div):
        return div(a.n, sf(a.term))
    if isinstance(a, LAtom):
        return l_atom(a.place, vf(a.t1), vf(a.t2))
    if isinstance(a, MAtom):
        return m_atom(a.place, vf(a.t1), vf(a.t2), vf(a.t3))
    if isinstance(a, QAtom):
        return q_atom(a.place, a.n, vf(a.term))
    raise TypeError(a)


def subst_atom_vec(a: Atom, v: str, t: VecTerm) -> Formula:
    if v not in atom_vars(a):
        return a
    return rebuild_atom(a, lambda s: s.substitute(v, t), lambda s: s.subst_vec(v, t))


def subst_atom_val(a: Atom, v: str, t: ValTerm) -> Formula:
    if v not in atom_vars(a):
        return a
    return rebuild_atom(a, None, lambda s: s.replace_key(v, t))


def specialize(f: Formula, vec_env: Mapping[str, Fraction],
               val_env: Optional[Mapping[str, ValInt]] = None) -> Formula:
    """Substitute concrete values for the assigned free variables."""
    vals = dict(val_env or {})

    def vf(t: VecTerm) -> VecTerm:
        return t.partial(vec_env)

    def sf(s: ValTerm) -> ValTerm:
        s = s.partial_vec(vec_env)
        for k in s.val_vars & vals.keys():
            s = s.replace_key(k, ValTerm.constant(vals[k]))
        return s

    def walk(g: Formula, bound: frozenset) -> Formula:
        if isinstance(g, Atom):
            if bound:
                return _specialize_bound(g, vec_env, vals, bound)
            return rebuild_atom(g, vf, sf)
        if isinstance(g, Quant):
            return type(g)(g.var, g.sort, walk(g.body, bound | {g.var}))
        if isinstance(g, Not):
            return neg(walk(g.arg, bound))
        if isinstance(g, And):
            return conj(*(walk(h, bound) for h in g.args))
        if isinstance(g, Or):
            return disj(*(walk(h, bound) for h in g.args))
        if isinstance(g, Implies):
            return Implies(walk(g.lhs, bound), walk(g.rhs, bound))
        raise TypeError(g)

    return walk(f, frozenset())


def _specialize_bound(a: Atom, vec_env, vals, bound: frozenset) -> Formula:
    ve = {k: v for k, v in vec_env.items() if k not in bound}
    va = {k: v for k, v in vals.items() if k not in bound}
    return specialize(a, ve, va)


def fresh_name(base: str, avoid: set) -> str:
    i = 1
    while f"{base}_{i}" in avoid:
        i += 1
    return f"{base}_{i}"


def substitute(f: Formula, var: str, t: Union[VecTerm, ValTerm]) -> Formula:
    """Capture-avoiding substitution of ``var`` by ``t``."""
    fv = free_vars(f)
    if var not in fv:
        return f
    want = VEC if isinstance(t, VecTerm) else VAL
    if fv[var] != want:
        raise IllSortedError(f"cannot substitute a {want} term for {fv[var]} variable {var!r}")
    tvars = set(t.vars) if isinstance(t, VecTerm) else set(t.val_vars | t.vec_vars)
    return _subst(f, var, t, tvars)


def _subst(f: Formula, var: str, t, tvars: set) -> Formula:
    if isinstance(f, Atom):
        if isinstance(t, VecTerm):
            return subst_atom_vec(f, var, t)
        return subst_atom_val(f, var, t)
    if isinstance(f, Quant):
        if f.var == var:
            return f
        if var not in free_vars(f.body):
            return f
        body, bv = f.body, f.var
        if bv in tvars:
            nv = fresh_name(bv, all_vars(f) | tvars | {var})
            body = rename_free(body, bv, nv, f.sort)
            bv = nv
        return type(f)(bv, f.sort, _subst(body, var, t, tvars))
    if isinstance(f, Not):
        return neg(_subst(f.arg, var, t, tvars))
    if isinstance(f, And):
        return conj(*(_subst(g, var, t, tvars) for g in f.args))
    if isinstance(f, Or):
        return disj(*(_subst(g, var, t, tvars) for g in f.args))
    if isinstance(f, Implies):
        return Implies(_subst(f.lhs, var, t, tvars), _subst(f.rhs, var, t, tvars))
    raise TypeError(f)


def rename_free(f: Formula, old: str, new: str, sort: str) -> Formula:
    t = VecTerm.var(new) if sort == VEC else ValTerm.var(new)
    return _subst(f, old, t, {new})


def alpha_rename(f: Formula, avoid: Optional[set] = None) -> Formula:
    """Give every binder a name distinct from all free and other bound names."""
    used = set(free_vars(f)) | set(avoid or ())

    def walk(g: Formula) -> Formula:
        if isinstance(g, Quant):
            body = g.body
            v = g.var
            if v in used:
                nv = fresh_name(v, used | all_vars(body))
                body = rename_free(body, v, nv, g.sort)
                v = nv
            used.add(v)
            return type(g)(v, g.sort, walk(body))
        if isinstance(g, Atom):
            return g
        if isinstance(g, Not):
            return neg(walk(g.arg))
        if isinstance(g, And):
            return conj(*(walk(h) for h in g.args))
        if isinstance(g, Or):
            return disj(*(walk(h) for h in g.args))
        if isinstance(g, Implies):
            return Implies(walk(g.lhs), walk(g.rhs))
        raise TypeError(g)

    return walk(f)


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    return _alpha_eq(f, g, {}, {})


def _alpha_eq(f, g, mf: Dict[str, str], mg: Dict[str, str]) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Quant):
        if f.sort != g.sort:
            return False
        tag = f"#b{len(mf)}"
        return _alpha_eq(f.body, g.body, {**mf, f.var: tag}, {**mg, g.var: tag})
    if isinstance(f, Atom):
        return _rename_atom(f, mf) == _rename_atom(g, mg)
    cf, cg = children(f), children(g)
    return len(cf) == len(cg) and all(_alpha_eq(a, b, mf, mg) for a, b in zip(cf, cg))


def _rename_atom(a: Atom, m: Dict[str, str]) -> Formula:
    if not m:
        return a
    for old, new in m.items():
        sort = atom_vars(a).get(old)
        if sort == VEC:
            a = subst_atom_vec(a, old, VecTerm.var(new))
        elif sort == VAL:
            a = subst_atom_val(a, old, ValTerm.var(new))
    return a


# ---------------------------------------------------------------- normal forms


def negate_literal(lit: Formula) -> Formula:
    if isinstance(lit, Not):
        return lit.arg
    if isinstance(lit, Const):
        return Const(not lit.value)
    if isinstance(lit, Order):
        return order(-lit.term, not lit.strict)
    return Not(lit)


def to_nnf(f: Formula, positive: bool = True) -> Formula:
    """Negation normal form; implications are expanded, ``not (t >= 0)``
    becomes ``-t > 0``; other negated atoms stay as ``Not(atom)``."""
    if isinstance(f, Atom):
        return f if positive else negate_literal(f)
    if isinstance(f, Not):
        return to_nnf(f.arg, not positive)
    if isinstance(f, And):
        parts = [to_nnf(g, positive) for g in f.args]
        return conj(*parts) if positive else disj(*parts)
    if isinstance(f, Or):
        parts = [to_nnf(g, positive) for g in f.args]
        return disj(*parts) if positive else conj(*parts)
    if isinstance(f, Implies):
        a, b = to_nnf(f.lhs, not positive), to_nnf(f.rhs, positive)
        return disj(a, b) if positive else conj(a, b)
    if isinstance(f, Exists):
        body = to_nnf(f.body, positive)
        return Exists(f.var, f.sort, body) if positive else Forall(f.var, f.sort, body)
    if isinstance(f, Forall):
        body = to_nnf(f.body, positive)
        return Forall(f.var, f.sort, body) if positive else Exists(f.var, f.sort, body)
    raise TypeError(f)


Clause = Tuple[Formula, ...]


def _clause_ok(lits: set) -> bool:
    return not any(isinstance(l, Not) and l.arg in lits for l in lits)


def dnf_clauses(f: Formula, consistent=None, limit: Optional[int] = None) -> List[Clause]:
    """Clauses (conjunctions of literals) of a DNF of quantifier-free ``f``.

    ``consistent``, if given, is called on every partial clause; clauses it
    rejects are dropped as soon as they appear.  More than ``limit``
    intermediate clauses raise :class:`DnfTooLarge`.
    """
    if not is_quantifier_free(f):
        raise PlaceqError("to_dnf needs a quantifier-free formula")
    return _dnf(to_nnf(f), consistent, limit)


def _dnf(f: Formula, consistent=None, limit=None) -> List[Clause]:
    if isinstance(f, Const):
        return [()] if f.value else []
    if isinstance(f, (Atom, Not)):
        return [(f,)]
    if isinstance(f, Or):
        out: List[Clause] = []
        seen = set()
        for g in f.args:
            for c in _dnf(g, consistent, limit):
                key = frozenset(c)
                if key not in seen:
                    seen.add(key)
                    out.append(c)
        return out
    if isinstance(f, And):
        acc: List[Clause] = [()]
        for g in f.args:
            parts = _dnf(g, consistent, limit)
            nxt: List[Clause] = []
            seen = set()
            for a in acc:
                for b in parts:
                    merged = dict.fromkeys(a + b)
                    key = frozenset(merged)
                    if key in seen or not _clause_ok(set(merged)):
                        continue
                    if consistent is not None and not consistent(merged):
                        continue
                    seen.add(key)
                    nxt.append(tuple(merged))
                    if limit is not None and len(nxt) > limit:
                        raise DnfTooLarge(f"normal form exceeds {limit} clauses")
            acc = nxt
            if not acc:
                break
        return acc
    raise TypeError(f)


def simplify_clauses(clauses: Sequence[Clause]) -> List[Clause]:
    """Drop duplicates, contradictory and subsumed clauses."""
    uniq: Dict[frozenset, Clause] = {}
    for c in clauses:
        c = tuple(dict.fromkeys(l for l in c if l != TRUE))
        if FALSE in c or not _clause_ok(set(c)):
            continue
        uniq.setdefault(frozenset(c), c)
    keys = sorted(uniq, key=len)
    kept: List[frozenset] = []
    for k in keys:
        if any(s <= k for s in kept):
            continue
        kept.append(k)
    order_ix = {k: i for i, k in enumerate(uniq)}
    kept.sort(key=lambda k: order_ix[k])
    return [uniq[k] for k in kept]


def clauses_to_formula(clauses: Iterable[Clause]) -> Formula:
    return disj(*(conj(*c) for c in clauses))


def to_dnf(f: Formula) -> Formula:
    return clauses_to_formula(simplify_clauses(dnf_clauses(f)))
