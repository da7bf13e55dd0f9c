"""The acceptance suite.

Each criterion returns a :class:`Result` whose ``line`` is deterministic for
a fixed seed; running times are kept out of the report so that two runs can
be compared byte for byte.  Time limits still count toward pass/fail.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import combine
from . import formula as F
from . import oracle as O
from .cli import main as cli_main
from .errors import PlaceqError, UnsupportedConstruct
from .gadgets import KINDS, verify
from .interpret import l_to_order, order_to_l, to_one_sorted, to_two_sorted
from .parser import parse
from .rational import vp
from .terms import REAL, Place, ValTerm, VecTerm


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    limit: float
    elapsed: float = 0.0
    failures: List[str] = field(default_factory=list)

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{self.number:2d}] {status} {self.name}: {self.detail}"


@dataclass
class Report:
    seed: int
    results: List[Result]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self) -> str:
        lines = [f"acceptance suite, seed {self.seed}"]
        for r in self.results:
            lines.append(r.line)
            lines += [f"       {m}" for m in r.failures[:5]]
        lines.append(f"{sum(r.passed for r in self.results)}/{len(self.results)} criteria passed")
        return "\n".join(lines)

    def as_json(self) -> dict:
        return {"seed": self.seed, "passed": self.ok,
                "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                              "detail": r.detail, "failures": r.failures[:5]}
                             for r in self.results]}


def _timed(number: int, name: str, limit: float, body: Callable[[], Tuple[bool, str, List[str]]]
           ) -> Result:
    t0 = time.perf_counter()
    try:
        ok, detail, failures = body()
    except PlaceqError as e:
        ok, detail, failures = False, f"error: {e}", []
    elapsed = time.perf_counter() - t0
    if elapsed > limit:
        ok = False
        failures = failures + ["time limit exceeded"]
    return Result(number, name, ok, detail, limit, elapsed, failures)


P2, P3, P5 = Place(2), Place(3), Place(5)


def _v(name: str) -> VecTerm:
    return VecTerm.var(name)


def _lin(rng: random.Random, names: Sequence[str], lo: int = -4, hi: int = 4,
         const: bool = True) -> VecTerm:
    """A random linear term with at least one variable."""
    while True:
        t = VecTerm.constant(rng.randint(lo, hi) if const else 0)
        for n in names:
            if rng.random() < 0.6:
                t = t + _v(n).scale(rng.randint(lo, hi))
        if t.vars:
            return t


# ---------------------------------------------------------------- 1: axioms


def _axiom_instances(p: int, lam: Fraction) -> List[F.Formula]:
    u = vp(lam, p)
    sorts = {"x": F.VEC, "y": F.VEC, "g": F.VAL, "d": F.VAL, "e": F.VAL}
    omega = " | ".join(f"v[{p}]({w}*x + y) > v[{p}](x)" for w in range(1, p))
    texts = [
        # (1) 0 != 1 and (8) v(1) = 0
        f"!(1 = 0) & v[{p}](1) = 0",
        # (2) discrete order with top element oo
        "g <= oo & (g < d -> g + 1 <= d) & (g <= d | d <= g)",
        # (3) surjectivity on the sampled value
        f"g = oo | v[{p}](x) != g | v[{p}](x) = g",
        # (4) ultrametric inequality, v(x) = oo iff x = 0
        f"(v[{p}](x+y) >= v[{p}](x) | v[{p}](x+y) >= v[{p}](y))"
        f" & (v[{p}](x) = oo -> x = 0) & (x = 0 -> v[{p}](x) = oo)",
        # (5) successor
        "g = oo | (g + 1 > g & !(g < d & d < g + 1))",
        # (6) compatibility with scalars
        f"v[{p}]({lam}*x) = v[{p}](x) + {u}" if u >= 0 else
        f"v[{p}]({lam}*x) + {-u} = v[{p}](x)",
        # (7) residue field of size p
        f"!(v[{p}](x) = v[{p}](y) & !(x = 0)) | {omega}",
        # (9) ordered abelian group, absorbing oo
        "g + d = d + g & (g <= d -> g + e <= d + e) & g + oo = oo",
        # (10) Z-group: some residue of g mod n, (11) P_n
        "P[2](g) | P[2](g - 1)",
        "P[3](g) | P[3](g - 1) | P[3](g - 2)",
        "(P[2](g) -> P[2](g + 2*d)) & (P[2](g) | P[2](g + 1))",
    ]
    return [parse(t, free_sorts=sorts) for t in texts]


def _axiom_sentences() -> List[str]:
    out = [f"E x:vec. v[2](x) = {n}" for n in range(-10, 11)]
    for p in (2, 3, 5):
        omega = " | ".join(f"v[{p}]({w}*x + y) > v[{p}](x)" for w in range(1, p))
        out += [
            f"A x:vec. A y:vec. v[{p}](x+y) >= v[{p}](x) | v[{p}](x+y) >= v[{p}](y)",
            f"A x:vec. A y:vec. v[{p}](x) = v[{p}](y) & !(x = 0) -> {omega}",
            f"A x:vec. (v[{p}](x) = oo -> x = 0) & (x = 0 -> v[{p}](x) = oo)",
            f"A x:vec. v[{p}]({p}*x) = v[{p}](x) + 1",
        ]
    out += [
        "A g:val. A d:val. g < d -> g + 1 <= d",
        "A g:val. g <= oo",
        "A g:val. E d:val. g = 2*d + 1 | g = 2*d + 2",
        "A g:val. E d:val. g = 3*d + 1 | g = 3*d + 2 | g = 3*d + 3",
        "A g:val. (P[2](g) -> E d:val. g = 2*d) & ((E d:val. g = 2*d) -> P[2](g))",
        "A g:val. (P[3](g) -> E d:val. g = 3*d) & ((E d:val. g = 3*d) -> P[3](g))",
    ]
    return out


def criterion_axioms(seed: int) -> Result:
    def body():
        sampler = O.Sampler(seed, [parse("v[2](x) = v[3](y) & v[5](x) = 0")])
        lams = [Fraction(1, 2), Fraction(3), Fraction(-4, 9), Fraction(5), Fraction(7, 10),
                Fraction(-1), Fraction(25, 6), Fraction(12)]
        sorts = {"x": F.VEC, "y": F.VEC, "g": F.VAL, "d": F.VAL, "e": F.VAL}
        instances = {(p, lam): _axiom_instances(p, lam) for p in (2, 3, 5) for lam in lams}
        fails: List[str] = []
        count = 0
        for i in range(200):
            a = sampler.assignment(sorts)
            lam = lams[i % len(lams)]
            for p in (2, 3, 5):
                for f in instances[(p, lam)]:
                    count += 1
                    if not O.eval_qf(f, a):
                        fails.append(f"{f} false at {a}")
        sentences = _axiom_sentences()
        for s in sentences:
            if not combine.decide(parse(s)):
                fails.append(f"engine decided false: {s}")
        return (not fails, f"{count} axiom instances evaluated, {len(sentences)} sentences "
                f"decided, {len(fails)} failures", fails)
    return _timed(1, "axiom suite", 10, body)


# ---------------------------------------------------------------- 2, 3: QE


def _random_finite_atom(rng: random.Random, names: Sequence[str]) -> F.Formula:
    p = rng.choice((P2, P3))
    r = rng.random()
    if r < 0.3:
        return F.l_atom(p, _lin(rng, names), _lin(rng, names))
    if r < 0.65:
        s1, s2 = ValTerm.v(p, _lin(rng, names)), ValTerm.v(p, _lin(rng, names))
        if rng.random() < 0.5:
            s2 = ValTerm.constant(rng.randint(-2, 2))
        k = rng.randint(-2, 2)
        op = rng.choice(("le", "eq", "lt"))
        if op == "le":
            return F.val_le(s1, s2.shift(k))
        if op == "lt":
            return F.neg(F.val_le(s2.shift(k), s1))
        return F.val_eq(s1, s2.shift(k))
    if r < 0.8:
        return F.q_atom(p, rng.choice((2, 3)), _lin(rng, names))
    if r < 0.9:
        return F.m_atom(p, _lin(rng, names), _lin(rng, names), _lin(rng, names))
    return F.vec_eq(_lin(rng, names))


def _random_real_atom(rng: random.Random, names: Sequence[str]) -> F.Formula:
    r = rng.random()
    t1, t2 = _lin(rng, names), _lin(rng, names)
    if r < 0.3:
        return F.l_atom(REAL, t1, t2)
    if r < 0.55:
        return F.order(t2 - t1, True)
    if r < 0.8:
        return F.order(t2 - t1, False)
    if r < 0.9:
        return F.vec_eq(t1)
    return F.neg(F.vec_eq(t1))


def _random_matrix(rng, names, atom, n_atoms) -> F.Formula:
    lits = []
    for _ in range(n_atoms):
        a = atom(rng, names)
        lits.append(F.neg(a) if rng.random() < 0.3 else a)
    f = lits[0]
    for l in lits[1:]:
        f = F.conj(f, l) if rng.random() < 0.55 else F.disj(f, l)
    return f


def random_formula(rng: random.Random, atom, max_vars: int = 3) -> F.Formula:
    """Up to ``max_vars`` vector variables, at most one of them free; the
    bound ones are quantified in order, sometimes below a connective."""
    nbound = rng.randint(1, max_vars - 1) if max_vars > 1 else 1
    nfree = rng.randint(0, min(1, max_vars - nbound))
    free = ["z"][:nfree]
    bound = ["x", "y", "w"][:nbound]

    def build(i: int, scope: List[str]) -> F.Formula:
        if i == len(bound):
            return _random_matrix(rng, scope, atom, rng.randint(1, 3))
        x = bound[i]
        q = F.Exists if rng.random() < 0.5 else F.Forall
        inner = build(i + 1, scope + [x])
        if x not in F.free_vars(inner):
            inner = F.conj(inner, atom(rng, scope + [x]))
        f = q(x, F.VEC, inner)
        if i > 0 and rng.random() < 0.3:
            side = atom(rng, scope)
            f = F.conj(side, f) if rng.random() < 0.5 else F.disj(side, f)
        return f

    return build(0, free)


def _qe_differential(number: int, name: str, limit: float, count: int, seed: int, atom,
                     samples: int, bound: int) -> Result:
    def body():
        rng = random.Random(seed)
        fails: List[str] = []
        evals = refused = i = 0
        while i < count:
            f = random_formula(rng, atom)
            try:
                g = combine.eliminate(f)
            except UnsupportedConstruct:
                # size guard tripped; draw a fresh formula in its place
                refused += 1
                continue
            i += 1
            if not F.is_quantifier_free(g):
                fails.append(f"not quantifier-free: {f}")
                continue
            rep = O.check_equiv_sampled(f, g, samples, seed * 1000 + i - 1, bound)
            evals += rep.checked
            if not rep.ok:
                fails.append(f"{f}  ~>  {g}: {rep}")
        return (not fails, f"{count} formulas, {evals} sampled comparisons, "
                f"{len(fails)} mismatches, {refused} refused and replaced", fails)
    return _timed(number, name, limit, body)


def criterion_qe_finite(seed: int) -> Result:
    return _qe_differential(2, "QE differential test (finite places)", 180, 500, seed,
                            _random_finite_atom, samples=4, bound=50)


def criterion_qe_real(seed: int) -> Result:
    return _qe_differential(3, "QE differential test (real place)", 60, 300, seed + 1,
                            _random_real_atom, samples=4, bound=50)


# ---------------------------------------------------------------- 4: residues


def criterion_residues(seed: int) -> Result:
    def body():
        fails = []
        n_inst = 0
        for p in (2, 3, 5):
            for n in range(1, p + 2):
                n_inst += 1
                ds = [i * (p + 1) for i in range(n)]
                text = "E x:vec. " + " & ".join(f"v[{p}](x - {d}) = 0" for d in ds)
                engine = combine.decide(parse(text))
                truth = any(all((r - d) % p for d in ds) for r in range(p * p))
                expected = len({d % p for d in ds}) < p
                if not (engine == truth == expected):
                    fails.append(f"p={p} n={n}: engine {engine}, residues {truth}")
        return not fails, f"{n_inst} instances, {n_inst - len(fails)} agree", fails
    return _timed(4, "residue-capacity family", 5, body)


# ---------------------------------------------------------------- 5: approximation


def _nullspace(a: List[List[Fraction]], n: int) -> List[List[Fraction]]:
    rows = [r[:] for r in a]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][c] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                rows[i] = [u - rows[i][c] * v for u, v in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        vec = [Fraction(0)] * n
        vec[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][c]
        basis.append(vec)
    return basis


def _rand_q(rng: random.Random, k: int = 6) -> Fraction:
    return Fraction(rng.randint(-k, k), rng.randint(1, k))


def approximation_instance(rng: random.Random) -> Tuple[F.Formula, List[str]]:
    n = rng.randint(1, 3)
    m = rng.randint(0, min(3, n))
    places = rng.sample([P2, P3, REAL], rng.randint(2, 3))
    names = [f"y{j + 1}" for j in range(n)]
    a = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
    ystar = [_rand_q(rng) for _ in range(n)]
    null = _nullspace(a, n)
    lits: List[F.Formula] = []
    for row in a:
        t = VecTerm.constant(-sum(c * y for c, y in zip(row, ystar)))
        for c, name in zip(row, names):
            t = t + _v(name).scale(c)
        lits.append(F.vec_eq(t))
    for p in places:
        target = ystar[:]
        for b in null:
            c = _rand_q(rng)
            target = [t + c * v for t, v in zip(target, b)]
        for name, xt in zip(names, target):
            d = _v(name).shift(-xt)
            if p.is_finite:
                k = rng.randint(0, 3)
                lits.append(F.val_le(ValTerm.constant(k + 1), ValTerm.v(p, d)))
            else:
                eps = Fraction(1, rng.randint(1, 20))
                lits += [F.order(d.shift(eps), True), F.order((-d).shift(eps), True)]
    body = F.conj(*lits)
    f = body
    for name in reversed(names):
        f = F.Exists(name, F.VEC, f)
    return f, names


def criterion_approximation(seed: int) -> Result:
    def body():
        rng = random.Random(seed + 5)
        fails = []
        for i in range(50):
            f, names = approximation_instance(rng)
            if not combine.decide(f):
                fails.append(f"decided false: {f}")
                continue
            w = combine.witness(f)
            matrix = f
            while isinstance(matrix, F.Exists):
                matrix = matrix.body
            if not O.eval_qf(matrix, w):
                fails.append(f"bad witness {w} for {f}")
        return not fails, f"50 instances, {50 - len(fails)} decided true with exact witnesses", fails
    return _timed(5, "weak-approximation suite", 30, body)


# ---------------------------------------------------------------- 6: decoupling


def _place_literal(rng: random.Random, p: Place, names: Sequence[str]) -> F.Formula:
    t = _lin(rng, names, -3, 3)
    if t.const == 0:
        t = t.shift(rng.choice((1, -1, 2)))
    if not p.is_finite:
        return F.order(t, rng.random() < 0.5) if rng.random() < 0.5 else F.order(-t, True)
    k = rng.randint(-2, 2)
    s = ValTerm.v(p, t)
    r = rng.random()
    if r < 0.35:
        return F.val_eq(s, ValTerm.constant(k))
    if r < 0.6:
        return F.val_le(ValTerm.constant(k), s)
    if r < 0.8:
        return F.neg(F.val_le(ValTerm.constant(k), s))
    return F.l_atom(p, t, _lin(rng, names, -3, 3).shift(rng.choice((1, 3))))


def decoupling_instance(rng: random.Random):
    names = ["x"] if rng.random() < 0.7 else ["x", "y"]
    shared = [F.neg(F.vec_eq(_v(n))) for n in names]
    if len(names) == 2:
        shared += [F.neg(F.vec_eq(_v("x") - _v("y"))), F.neg(F.vec_eq(_v("x") + _v("y")))]
    places = rng.sample([P2, P3, REAL], rng.randint(2, 3))
    buckets = {p: [_place_literal(rng, p, names) for _ in range(rng.randint(1, 2))]
               for p in places}
    return names, shared, buckets


def _close(names, body) -> F.Formula:
    for n in reversed(names):
        body = F.Exists(n, F.VEC, body)
    return body


def criterion_decoupling(seed: int) -> Result:
    def body():
        rng = random.Random(seed + 6)
        fails = []
        n_true = 0
        for i in range(100):
            names, shared, buckets = decoupling_instance(rng)
            whole = F.conj(*shared, *(l for ls in buckets.values() for l in ls))
            joint = combine.decide(_close(names, whole))
            parts = all(combine.decide(_close(names, F.conj(*shared, *ls)))
                        for ls in buckets.values())
            bound = 50 if len(names) == 1 else 10
            found = O.search_witness(whole, names, bound) is not None
            if not found and joint:
                w = combine.witness(_close(names, whole))
                found = O.eval_qf(whole, w)
            n_true += joint
            if not (joint == parts == found):
                fails.append(f"{whole}: joint {joint}, per place {parts}, search {found}")
        return (not fails, f"100 conjunctions ({n_true} satisfiable), {len(fails)} mismatches",
                fails)
    return _timed(6, "decoupling cross-check", 120, body)


# ---------------------------------------------------------------- 7: translations


def _random_value_atom(rng: random.Random, names: Sequence[str]) -> F.Formula:
    p = rng.choice((P2, P3))
    r = rng.random()
    s1, s2 = ValTerm.v(p, _lin(rng, names)), ValTerm.v(p, _lin(rng, names))
    if r < 0.3:
        return F.val_le(s1.shift(rng.randint(-2, 2)), s2.shift(rng.randint(-2, 2)))
    if r < 0.55:
        return F.val_eq(s1.shift(rng.randint(-2, 2)), s2)
    if r < 0.7:
        return F.val_eq(s1 + s2, ValTerm.v(p, _lin(rng, names)).shift(rng.randint(-2, 2)))
    if r < 0.85:
        return F.div(rng.choice((2, 3, 4)), s1.scale(rng.randint(1, 3)).shift(rng.randint(-3, 3)))
    return F.val_eq(s1, ValTerm.infinity())


def criterion_translation(seed: int) -> Result:
    def body():
        rng = random.Random(seed + 7)
        fails = []
        names = ["x", "y"]
        for i in range(300):
            kind = i % 3
            if kind == 0:
                f = _random_matrix(rng, names, lambda r, n: _random_finite_atom(r, n), 3)
                g, h = to_two_sorted(f), to_one_sorted(to_two_sorted(f))
            elif kind == 1:
                f = _random_matrix(rng, names, _random_value_atom, 3)
                g, h = to_one_sorted(f), to_two_sorted(to_one_sorted(f))
            else:
                f = _random_matrix(rng, names, _random_real_atom, 3)
                g, h = l_to_order(f), order_to_l(l_to_order(f))
            for other in (g, h):
                rep = O.check_equiv_sampled(f, other, 20, seed * 1000 + i)
                if not rep.ok:
                    fails.append(f"{f} vs {other}: {rep}")
                    break
        return not fails, f"300 formulas, {len(fails)} disagreements", fails
    return _timed(7, "translation faithfulness", 30, body)


# ---------------------------------------------------------------- 8: gadgets


M_INF_QUERIES = [
    "M[inf](x,x,x)",
    "E x:vec. M[inf](x, x, 2)",
    "A x:vec. E y:vec. M[inf](x, y, 1) | x = 0",
]


def criterion_gadgets(seed: int) -> Result:
    def body():
        fails = []
        for k in KINDS:
            r = verify(k, 1000, seed)
            if not r.ok:
                fails.append(str(r))
        import contextlib
        import io
        codes = []
        for q in M_INF_QUERIES:
            with contextlib.redirect_stderr(io.StringIO()), contextlib.redirect_stdout(io.StringIO()):
                codes.append(cli_main(["decide", "--places", "inf", q]))
                codes.append(cli_main(["decide", q]))
        if any(c != 3 for c in codes):
            fails.append(f"exit codes for M[inf] queries: {codes}")
        return (not fails, f"{len(KINDS)} gadgets x 1000 samples, "
                f"{len(codes)} M[inf] queries refused with exit 3", fails)
    return _timed(8, "gadget verification", 10, body)


# ---------------------------------------------------------------- 9: sentences


SENTENCES: List[Tuple[str, str, bool]] = [
    ("ultrametric tautology", "A x:vec. A y:vec. L[2](x+y, x) | L[2](x+y, y)", True),
    ("F2 sphere infeasible", "E x:vec. v[2](x)=0 & v[2](x-1)=0", False),
    ("F3 sphere feasible", "E x:vec. v[3](x)=0 & v[3](x-1)=0", True),
    ("F5 four residues", "E x:vec. v[5](x)=0 & v[5](x-1)=0 & v[5](x-2)=0 & v[5](x-3)=0", True),
    ("F5 five residues",
     "E x:vec. v[5](x)=0 & v[5](x-1)=0 & v[5](x-2)=0 & v[5](x-3)=0 & v[5](x-4)=0", False),
    ("CRT 2,3", "E y:vec. v[2](y-1) >= 3 & v[3](y) >= 2", True),
    ("CRT 2,5 deep", "E y:vec. v[2](y-1) >= 6 & v[5](y+2) >= 3", True),
    ("mixed real/2-adic", "E y:vec. L[inf](y - 1/2, 1/4) & v[2](y) = 1", True),
    ("mixed real/2-adic empty", "E y:vec. y > 0 & y < 1 & v[2](y) = 0 & v[2](y-1) = 0", False),
    ("shift by 2", "E x:vec. !(x=0) & L[2](2*x, x) & !L[2](x, 2*x)", True),
    ("positive even", "E y:vec. y > 0 & v[2](y) >= 1", True),
    ("opposite valuations", "E y:vec. v[2](y) = -1 & v[3](y) = 1", True),
    ("no strictly smaller value at 0", "A x:vec. E y:vec. L[3](y, x) & !L[3](x, y)", False),
    ("squares at 2 have even value", "E x:vec. Q[2,2](x) & v[2](x) = 1", False),
    ("M at 2: no half value", "E x:vec. M[2](x, x, 2)", False),
    ("M at 2: square root of 4", "E x:vec. M[2](x, x, 4)", True),
    ("real totality", "A x:vec. A y:vec. L[inf](x, y) | L[inf](y, x)", True),
    ("no odd double", "E g:val. g + g = 3", False),
]


def criterion_sentences(seed: int) -> Result:
    def body():
        fails = []
        for name, text, expected in SENTENCES:
            f = parse(text)
            engine = combine.decide(f)
            oracle = O.eval_bounded(f, {}, 50)
            if not (engine == oracle == expected):
                fails.append(f"{name}: engine {engine}, oracle {oracle}, expected {expected}")
        return (not fails, f"{len(SENTENCES)} sentences, "
                f"{len(SENTENCES) - len(fails)} match the oracle", fails)
    return _timed(9, "sentence regression table", 10, body)


# ---------------------------------------------------------------- suite


CRITERIA = [criterion_axioms, criterion_qe_finite, criterion_qe_real, criterion_residues,
            criterion_approximation, criterion_decoupling, criterion_translation,
            criterion_gadgets, criterion_sentences]


def run_criteria(seed: int = 0, only: Optional[Sequence[int]] = None) -> List[Result]:
    return [c(seed) for i, c in enumerate(CRITERIA, 1) if only is None or i in only]


def criterion_determinism(seed: int, first: List[Result]) -> Result:
    def body():
        second = run_criteria(seed)
        a = [r.line for r in first]
        b = [r.line for r in second]
        same = a == b
        return same, ("two runs byte-identical" if same else "reports differ"), (
            [] if same else [f"{x} / {y}" for x, y in zip(a, b) if x != y])
    limit = 2 * sum(r.limit for r in first)
    return _timed(10, "determinism", limit, body)


def run_suite(seed: int = 0) -> Report:
    first = run_criteria(seed)
    return Report(seed, first + [criterion_determinism(seed, first)])
