"""Recursive-descent parser for the surface formula language.

Grammar::

    formula := quant | impl
    quant   := ('E'|'A') ident ':' ('vec'|'val') '.' formula
    impl    := disj ['->' impl]
    disj    := conj {'|' conj}
    conj    := lit {'&' lit}
    lit     := '!' lit | '(' formula ')' | quant | atom
    atom    := 'L[' place '](' vterm ',' vterm ')'
             | 'M[' place '](' vterm ',' vterm ',' vterm ')'
             | 'Q[' place ',' nat '](' vterm ')'
             | 'P[' nat '](' sterm ')'
             | term relop term

A comparison is read at the value sort when it mentions ``v[..](..)``,
``oo`` or a value variable, and at the vector sort otherwise.  ``#`` starts a
comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from . import formula as F
from .errors import IllSortedError, InvalidPlaceError, ParseError, SignatureError, SourceSpan
from .terms import Place, ValTerm, VecTerm

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|<=|>=|!=|[<>=&|!()\[\],.:+\-*/])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> List[Tok]:
    toks: List[Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(Tok(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(Tok("eof", "", len(text), len(text)))
    return toks


def _span(text: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, max(start, end), line, col)


# raw linear items: (coef, kind, payload)
#   kind "var": payload name;  "v": (Place, VecTerm);  "oo": None;  "const": None
Item = Tuple[Fraction, str, object]


class _Parser:
    def __init__(self, text: str, signature: Optional[Iterable[Place]],
                 free_sorts: Optional[Mapping[str, str]]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.signature = set(signature) if signature is not None else None
        self.free: Dict[str, str] = dict(free_sorts or {})
        self.scopes: List[Tuple[str, str]] = []

    # -- token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Tok] = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, _span(self.text, t.start, t.end))

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        t = self.tok
        self.i += 1
        return t

    def nat(self) -> int:
        if self.tok.kind != "num":
            raise self.error("expected a natural number")
        n = int(self.tok.text)
        self.i += 1
        return n

    # -- sorts
    def sort_of(self, name: str) -> Optional[str]:
        for v, s in reversed(self.scopes):
            if v == name:
                return s
        return self.free.get(name)

    def assign_sort(self, name: str, sort: str, tok: Tok) -> None:
        known = self.sort_of(name)
        if known is None:
            self.free[name] = sort
        elif known != sort:
            raise IllSortedError(
                f"variable {name!r} used as {sort} but is {known} "
                f"({_span(self.text, tok.start, tok.end)})")

    # -- formulas
    def parse(self) -> F.Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    def is_quant(self) -> bool:
        return (self.tok.text in ("E", "A") and self.peek().kind == "ident"
                and self.peek(2).text == ":")

    def formula(self) -> F.Formula:
        if self.is_quant():
            return self.quant()
        return self.impl()

    def quant(self) -> F.Formula:
        q = self.tok.text
        self.i += 1
        var = self.tok.text
        self.i += 1
        self.expect(":")
        sort_tok = self.tok
        if sort_tok.text not in (F.VEC, F.VAL):
            raise self.error("expected sort 'vec' or 'val'")
        self.i += 1
        self.expect(".")
        self.scopes.append((var, sort_tok.text))
        try:
            body = self.formula()
        finally:
            self.scopes.pop()
        cls = F.Exists if q == "E" else F.Forall
        return cls(var, sort_tok.text, body)

    def impl(self) -> F.Formula:
        lhs = self.disj()
        if self.at("->"):
            self.i += 1
            return F.Implies(lhs, self.impl())
        return lhs

    def disj(self) -> F.Formula:
        parts = [self.conj()]
        while self.at("|"):
            self.i += 1
            parts.append(self.conj())
        return F.disj(*parts) if len(parts) > 1 else parts[0]

    def conj(self) -> F.Formula:
        parts = [self.lit()]
        while self.at("&"):
            self.i += 1
            parts.append(self.lit())
        return F.conj(*parts) if len(parts) > 1 else parts[0]

    def lit(self) -> F.Formula:
        if self.at("!"):
            self.i += 1
            return F.neg(self.lit())
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if self.is_quant():
            return self.quant()
        return self.atom()

    def place(self) -> Place:
        tok = self.tok
        if tok.kind not in ("num", "ident"):
            raise self.error("expected a place (prime or 'inf')")
        self.i += 1
        try:
            p = Place.parse(tok.text)
        except InvalidPlaceError as e:
            raise InvalidPlaceError(str(e), _span(self.text, tok.start, tok.end)) from None
        if self.signature is not None and p not in self.signature:
            raise SignatureError(f"place {p} is not in the signature "
                                 f"({_span(self.text, tok.start, tok.end)})")
        return p

    def atom(self) -> F.Formula:
        t = self.tok
        if t.kind == "ident" and self.peek().text == "[" and t.text in ("L", "M", "Q", "P"):
            self.i += 2
            if t.text == "P":
                n = self.nat()
                if n < 1:
                    raise self.error("P[n] needs n >= 1", t)
                self.expect("]")
                self.expect("(")
                s = self.val_term(self.expr())
                self.expect(")")
                return F.div(n, s)
            p = self.place()
            n = None
            if t.text == "Q":
                self.expect(",")
                n = self.nat()
                if n < 1:
                    raise self.error("Q[p,n] needs n >= 1", t)
            self.expect("]")
            self.expect("(")
            args = [self.vec_term(self.expr())]
            arity = {"L": 2, "M": 3, "Q": 1}[t.text]
            while len(args) < arity:
                self.expect(",")
                args.append(self.vec_term(self.expr()))
            self.expect(")")
            if t.text == "L":
                return F.l_atom(p, *args)
            if t.text == "M":
                return F.m_atom(p, *args)
            return F.q_atom(p, n, args[0])
        lhs = self.expr()
        op_tok = self.tok
        if op_tok.text not in ("=", "<=", "<", ">=", ">", "!="):
            raise self.error("expected a comparison operator")
        self.i += 1
        rhs = self.expr()
        return self.comparison(lhs, op_tok.text, rhs, op_tok)

    # -- terms
    def expr(self) -> List[Tuple[Item, Tok]]:
        items: List[Tuple[Item, Tok]] = []
        sign = Fraction(1)
        if self.at("-"):
            self.i += 1
            sign = Fraction(-1)
        elif self.at("+"):
            self.i += 1
        items.append(self.term_item(sign))
        while self.at("+") or self.at("-"):
            sign = Fraction(1 if self.tok.text == "+" else -1)
            self.i += 1
            items.append(self.term_item(sign))
        return items

    def rational(self) -> Fraction:
        num = self.nat()
        if self.at("/") and self.peek().kind == "num":
            self.i += 1
            den_tok = self.tok
            den = self.nat()
            if den == 0:
                raise self.error("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def term_item(self, sign: Fraction) -> Tuple[Item, Tok]:
        tok = self.tok
        if tok.kind == "num":
            c = sign * self.rational()
            if self.at("*"):
                self.i += 1
                item, _ = self.factor(c)
                return item, tok
            return (c, "const", None), tok
        return self.factor(sign)

    def factor(self, coef: Fraction) -> Tuple[Item, Tok]:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error("expected a term")
        if tok.text == "oo":
            self.i += 1
            return (coef, "oo", None), tok
        if tok.text == "v" and self.peek().text == "[":
            self.i += 2
            p = self.place()
            if not p.is_finite:
                raise self.error("v[..] needs a finite place", tok)
            self.expect("]")
            self.expect("(")
            t = self.vec_term(self.expr())
            self.expect(")")
            return (coef, "v", (p, t)), tok
        self.i += 1
        return (coef, "var", tok.text), tok

    def is_value(self, items) -> bool:
        for (c, kind, payload), _ in items:
            if kind in ("v", "oo"):
                return True
            if kind == "var" and self.sort_of(payload) == F.VAL:
                return True
        return False

    def vec_term(self, items) -> VecTerm:
        coeffs, const = [], Fraction(0)
        for (c, kind, payload), tok in items:
            if kind == "const":
                const += c
            elif kind == "var":
                self.assign_sort(payload, F.VEC, tok)
                coeffs.append((payload, c))
            else:
                raise IllSortedError(
                    f"value term in vector position ({_span(self.text, tok.start, tok.end)})")
        return VecTerm(coeffs, const)

    def val_term(self, items) -> ValTerm:
        out = ValTerm()
        for (c, kind, payload), tok in items:
            if c.denominator != 1:
                raise self.error("value terms need integer coefficients", tok)
            n = int(c)
            if kind == "const":
                out = out.shift(n)
            elif kind == "oo":
                if n < 0:
                    raise self.error("'oo' cannot be negated", tok)
                out = out + ValTerm.infinity()
            elif kind == "var":
                self.assign_sort(payload, F.VAL, tok)
                out = out + ValTerm.var(payload).scale(n)
            else:
                p, t = payload
                out = out + ValTerm.v(p, t).scale(n)
        return out

    def comparison(self, lhs, op: str, rhs, tok: Tok) -> F.Formula:
        if self.is_value(lhs) or self.is_value(rhs):
            a, b = self.val_term(lhs), self.val_term(rhs)
            if op == "=":
                return F.val_eq(a, b)
            if op == "!=":
                return F.neg(F.val_eq(a, b))
            if op == "<=":
                return F.val_le(a, b)
            if op == ">=":
                return F.val_le(b, a)
            if op == "<":
                return F.neg(F.val_le(b, a))
            return F.neg(F.val_le(a, b))
        a, b = self.vec_term(lhs), self.vec_term(rhs)
        if op == "=":
            return F.vec_eq(a - b)
        if op == "!=":
            return F.neg(F.vec_eq(a - b))
        if op in ("<=", "<"):
            return F.order(b - a, op == "<")
        return F.order(a - b, op == ">")


def parse(text: str, signature: Optional[Iterable[Place]] = None,
          free_sorts: Optional[Mapping[str, str]] = None) -> F.Formula:
    """Parse ``text``; ``signature`` restricts the admissible places and
    ``free_sorts`` fixes the sorts of free variables (default: inferred,
    else vector)."""
    return _Parser(text, signature, free_sorts).parse()


def parse_with_sorts(text: str, signature=None, free_sorts=None):
    """Like :func:`parse`, also returning the sorts of the free variables."""
    p = _Parser(text, signature, free_sorts)
    f = p.parse()
    fv = F.free_vars(f)
    return f, {v: p.free.get(v, s) for v, s in fv.items()}
