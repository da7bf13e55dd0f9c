"""Definability formulas at the real place, with sampled verification.

* ``order``: ``x <= y`` as ``L[inf](y-x-1, y-x+1)``.
* ``nonneg``: ``x >= 0`` as ``L[inf](x-1, x+1)``.
* ``mult``: ``x*y = z`` from ``M[inf]`` and ``nonneg`` by a sign case split.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import formula as F
from .oracle import eval_qf
from .terms import REAL, VecTerm

KINDS = ("order", "nonneg", "mult")


def _v(name: str) -> VecTerm:
    return VecTerm.var(name)


def order_from_l() -> F.Formula:
    d = _v("y") - _v("x")
    return F.LAtom(REAL, d.shift(-1), d.shift(1))


def nonneg(t: Optional[VecTerm] = None) -> F.Formula:
    t = _v("x") if t is None else t
    return F.LAtom(REAL, t.shift(-1), t.shift(1))


def multiplication_from_m() -> F.Formula:
    x, y, z = _v("x"), _v("y"), _v("z")

    def psi(a, b, c):
        return F.And((nonneg(a), nonneg(b), nonneg(c)))

    cases = F.Or((psi(x, y, z), psi(-x, -y, z), psi(-x, y, -z), psi(x, -y, -z)))
    return F.And((F.MAtom(REAL, x, y, z), cases))


def emit(kind: str) -> F.Formula:
    if kind == "order":
        return order_from_l()
    if kind == "nonneg":
        return nonneg()
    if kind == "mult":
        return multiplication_from_m()
    raise ValueError(f"unknown gadget {kind!r}; expected one of {', '.join(KINDS)}")


_TRUTH: Dict[str, Tuple[Tuple[str, ...], Callable[..., bool]]] = {
    "order": (("x", "y"), lambda x, y: x <= y),
    "nonneg": (("x",), lambda x: x >= 0),
    "mult": (("x", "y", "z"), lambda x, y, z: x * y == z),
}


@dataclass
class GadgetReport:
    kind: str
    samples: int
    counterexample: Optional[Dict[str, Fraction]] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        if self.ok:
            return f"{self.kind}: agrees with ground truth on {self.samples} samples"
        env = ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
        return f"{self.kind}: disagrees at {env}"


def _rational(rng: random.Random) -> Fraction:
    r = rng.random()
    if r < 0.15:
        return Fraction(0)
    if r < 0.3:
        return Fraction(rng.choice((1, -1)))
    return Fraction(rng.randint(-30, 30), rng.randint(1, 12))


def _samples(kind: str, n: int, rng: random.Random) -> List[Tuple[Fraction, ...]]:
    out: List[Tuple[Fraction, ...]] = []
    if kind == "mult":
        # all sign patterns, zeros included, then true and false triples
        for sx in (-1, 0, 1):
            for sy in (-1, 0, 1):
                x, y = sx * Fraction(2, 3), sy * Fraction(3)
                out += [(x, y, x * y), (x, y, -x * y), (x, y, x * y + 1)]
        while len(out) < n:
            x, y = _rational(rng), _rational(rng)
            r = rng.random()
            z = x * y if r < 0.4 else (-x * y if r < 0.7 else _rational(rng))
            out.append((x, y, z))
    elif kind == "order":
        while len(out) < n:
            x = _rational(rng)
            out.append((x, x if rng.random() < 0.2 else _rational(rng)))
    else:
        while len(out) < n:
            out.append((_rational(rng),))
    return out[:n]


def verify(kind: str, samples: int = 1000, seed: int = 0) -> GadgetReport:
    """Compare the gadget with the relation it defines on seeded samples."""
    f = emit(kind)
    names, truth = _TRUTH[kind]
    rng = random.Random(seed)
    for vals in _samples(kind, samples, rng):
        env = dict(zip(names, vals))
        if eval_qf(f, env) != truth(*vals):
            return GadgetReport(kind, samples, env)
    return GadgetReport(kind, samples)
