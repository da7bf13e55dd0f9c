"""Places and the two term sorts.

A :class:`VecTerm` is an affine Q-linear combination of vector variables.
A :class:`ValTerm` is an integer-affine combination of value variables and
valuation applications :class:`VApp`, or the element ``oo``.  Both are
canonical on construction, so structural equality is semantic equality of
the linear forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import InvalidPlaceError
from .rational import INF, ValInt, check_prime, format_rat, vp


@dataclass(frozen=True, order=False)
class Place:
    """A finite place (a prime) or the real place (``prime is None``)."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None:
            check_prime(self.prime)

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text == "inf":
            return cls(None)
        try:
            return cls(int(text))
        except ValueError:
            raise InvalidPlaceError(f"bad place {text!r}") from None

    @property
    def is_finite(self) -> bool:
        return self.prime is not None

    @property
    def uniformizer(self) -> int:
        if self.prime is None:
            raise ValueError("the real place has no uniformizer")
        return self.prime

    @property
    def residue_card(self) -> int:
        return self.uniformizer

    def sort_key(self):
        return (1, 0) if self.prime is None else (0, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


REAL = Place(None)


def _fmt_coef_var(c, name: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    body = name if a == 1 else f"{format_rat(a)}*{name}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _fmt_const(c, first: bool) -> str:
    if first:
        return format_rat(c)
    return (" - " if c < 0 else " + ") + format_rat(abs(c))


class VecTerm:
    """``sum coeff[v]*v + const`` with rational coefficients."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs: Mapping[str, Fraction] | Iterable = (), const=0):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[str, Fraction] = {}
        for v, c in items:
            c = Fraction(c)
            if c:
                acc[v] = acc.get(v, 0) + c
        self.coeffs: Tuple[Tuple[str, Fraction], ...] = tuple(
            sorted((v, c) for v, c in acc.items() if c))
        self.const = Fraction(const)
        self._hash = hash((self.coeffs, self.const))

    @classmethod
    def var(cls, name: str) -> "VecTerm":
        return cls({name: 1})

    @classmethod
    def constant(cls, c) -> "VecTerm":
        return cls((), c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, VecTerm) and self._hash == other._hash
                and self.coeffs == other.coeffs and self.const == other.const)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VecTerm({self})"

    def __str__(self) -> str:
        parts = [_fmt_coef_var(c, v, i == 0) for i, (v, c) in enumerate(self.coeffs)]
        if self.const or not parts:
            parts.append(_fmt_const(self.const, not parts))
        return "".join(parts)

    def sort_key(self):
        return (tuple((v, c.numerator, c.denominator) for v, c in self.coeffs),
                self.const.numerator, self.const.denominator)

    def coeff(self, v: str) -> Fraction:
        for w, c in self.coeffs:
            if w == v:
                return c
        return Fraction(0)

    @property
    def vars(self) -> frozenset:
        return frozenset(v for v, _ in self.coeffs)

    def is_const(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "VecTerm") -> "VecTerm":
        return VecTerm(self.coeffs + other.coeffs, self.const + other.const)

    def __neg__(self) -> "VecTerm":
        return VecTerm(((v, -c) for v, c in self.coeffs), -self.const)

    def __sub__(self, other: "VecTerm") -> "VecTerm":
        return self + (-other)

    def scale(self, lam) -> "VecTerm":
        lam = Fraction(lam)
        return VecTerm(((v, lam * c) for v, c in self.coeffs), lam * self.const)

    def shift(self, c) -> "VecTerm":
        return VecTerm(self.coeffs, self.const + Fraction(c))

    def substitute(self, v: str, t: "VecTerm") -> "VecTerm":
        c = self.coeff(v)
        if not c:
            return self
        rest = VecTerm(((w, d) for w, d in self.coeffs if w != v), self.const)
        return rest + t.scale(c)

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        total = self.const
        for v, c in self.coeffs:
            total += c * Fraction(env[v])
        return total

    def partial(self, env: Mapping[str, Fraction]) -> "VecTerm":
        """Substitute the variables of ``env`` that occur here by constants."""
        if not any(v in env for v, _ in self.coeffs):
            return self
        keep = [(v, c) for v, c in self.coeffs if v not in env]
        const = self.const + sum((c * Fraction(env[v]) for v, c in self.coeffs if v in env),
                                 Fraction(0))
        return VecTerm(keep, const)

    def leading(self) -> Fraction:
        return self.coeffs[0][1] if self.coeffs else self.const

    def monic(self) -> Tuple[Fraction, "VecTerm"]:
        """Return ``(c, u)`` with ``self == c*u`` and ``u`` monic (``c != 0``)."""
        c = self.leading()
        if c == 0:
            return Fraction(0), self
        return c, self.scale(1 / c)


@dataclass(frozen=True)
class VApp:
    """``v_p(term)`` with ``term`` monic and non-constant."""

    place: Place
    term: VecTerm

    def sort_key(self):
        return (self.place.sort_key(), self.term.sort_key())

    def __str__(self) -> str:
        return f"v[{self.place}]({self.term})"


Key = Union[str, VApp]


def key_sort(k: Key):
    return (0, k, ()) if isinstance(k, str) else (1, "", k.sort_key())


def _fmt_key(k: Key) -> str:
    return k if isinstance(k, str) else str(k)


class ValTerm:
    """Integer-affine value term; ``inf`` marks the element ``oo``.

    A term is ``oo`` as soon as any component is ``oo`` (``oo`` absorbs
    addition); the canonical form of such a term is the bare ``oo``.
    """

    __slots__ = ("coeffs", "const", "inf", "_hash")

    def __init__(self, coeffs: Mapping[Key, int] | Iterable = (), const: int = 0,
                 inf: bool = False):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[Key, int] = {}
        for k, c in items:
            if c:
                acc[k] = acc.get(k, 0) + int(c)
        if inf:
            self.coeffs, self.const, self.inf = (), 0, True
        else:
            self.coeffs = tuple(sorted(((k, c) for k, c in acc.items() if c),
                                       key=lambda kc: key_sort(kc[0])))
            self.const, self.inf = int(const), False
        self._hash = hash((self.coeffs, self.const, self.inf))

    @classmethod
    def infinity(cls) -> "ValTerm":
        return cls(inf=True)

    @classmethod
    def constant(cls, n: ValInt) -> "ValTerm":
        return cls.infinity() if n is INF else cls((), n)

    @classmethod
    def var(cls, name: str) -> "ValTerm":
        return cls({name: 1})

    @classmethod
    def v(cls, place: Place, t: VecTerm) -> "ValTerm":
        """The canonical value term for ``v_place(t)``."""
        if not place.is_finite:
            raise ValueError("valuation at the real place")
        if t.is_const():
            return cls.constant(vp(t.const, place.prime))
        c, u = t.monic()
        return cls({VApp(place, u): 1}, vp(c, place.prime))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ValTerm) and self._hash == other._hash
                and self.coeffs == other.coeffs and self.const == other.const
                and self.inf == other.inf)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ValTerm({self})"

    def __str__(self) -> str:
        if self.inf:
            return "oo"
        parts = []
        for i, (k, c) in enumerate(self.coeffs):
            name = _fmt_key(k)
            a = abs(c)
            body = name if a == 1 else f"{a}*{name}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        if self.const or not parts:
            parts.append(_fmt_const(self.const, not parts))
        return "".join(parts)

    def sort_key(self):
        return (self.inf, tuple((key_sort(k), c) for k, c in self.coeffs), self.const)

    def is_ground(self) -> bool:
        return self.inf or not self.coeffs

    def ground_value(self) -> ValInt:
        assert self.is_ground()
        return INF if self.inf else self.const

    @property
    def keys(self) -> frozenset:
        return frozenset(k for k, _ in self.coeffs)

    @property
    def val_vars(self) -> frozenset:
        return frozenset(k for k, _ in self.coeffs if isinstance(k, str))

    @property
    def vec_vars(self) -> frozenset:
        out = set()
        for k, _ in self.coeffs:
            if isinstance(k, VApp):
                out |= k.term.vars
        return frozenset(out)

    def coeff(self, k: Key) -> int:
        for w, c in self.coeffs:
            if w == k:
                return c
        return 0

    def __add__(self, other: "ValTerm") -> "ValTerm":
        if self.inf or other.inf:
            return ValTerm.infinity()
        return ValTerm(self.coeffs + other.coeffs, self.const + other.const)

    def shift(self, n: int) -> "ValTerm":
        if self.inf:
            return self
        return ValTerm(self.coeffs, self.const + n)

    def scale(self, n: int) -> "ValTerm":
        if self.inf:
            return self if n else ValTerm()
        return ValTerm(((k, n * c) for k, c in self.coeffs), n * self.const)

    def replace_key(self, k: Key, t: "ValTerm") -> "ValTerm":
        c = self.coeff(k)
        if not c or self.inf:
            return self
        rest = ValTerm(((w, d) for w, d in self.coeffs if w != k), self.const)
        return rest + t.scale(c)

    def subst_vec(self, v: str, t: VecTerm) -> "ValTerm":
        """Substitute vector variable ``v`` by ``t`` inside every ``v_p``."""
        if self.inf or not any(isinstance(k, VApp) and v in k.term.vars
                               for k, _ in self.coeffs):
            return self
        out = ValTerm((), self.const)
        for k, c in self.coeffs:
            if isinstance(k, VApp) and v in k.term.vars:
                out = out + ValTerm.v(k.place, k.term.substitute(v, t)).scale(c)
            else:
                out = out + ValTerm({k: c})
        return out

    def partial_vec(self, env: Mapping[str, Fraction]) -> "ValTerm":
        if self.inf:
            return self
        out = ValTerm((), self.const)
        for k, c in self.coeffs:
            if isinstance(k, VApp) and k.term.vars & env.keys():
                out = out + ValTerm.v(k.place, k.term.partial(env)).scale(c)
            else:
                out = out + ValTerm({k: c})
        return out

    def evaluate(self, vec_env: Mapping[str, Fraction],
                 val_env: Mapping[str, ValInt]) -> ValInt:
        if self.inf:
            return INF
        total = self.const
        for k, c in self.coeffs:
            if isinstance(k, str):
                x = val_env[k]
            else:
                x = vp(k.term.evaluate(vec_env), k.place.prime)
            if x is INF:
                return INF
            total += c * x
        return total
