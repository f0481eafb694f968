"""Text grammar for fields, rings, polynomials and fixture files.

Grammar (whitespace and ``#`` comments are ignored)::

    field    := base [ '[' IDENT ']' '/' '(' expr ')' ]
    base     := 'QQ' | 'Fp' '(' INT ')'
    ring     := field '[' IDENT { ',' IDENT } ']'
    expr     := term { ('+' | '-') term }
    term     := unary { ('*' | '/') unary }
    unary    := ('-' | '+') unary | power
    power    := atom [ '^' INT ]
    atom     := INT | IDENT | '(' expr ')'

    fixture  := 'ring' ':' ring { entry }
    entry    := 'ideal' IDENT '=' '[' [ expr { ';' expr } ] ']'
              | 'poly' IDENT '=' expr
              | 'curve' IDENT '=' '[' IDENT ':' expr { ';' IDENT ':' expr } ']'

There is no implicit multiplication: ``xy`` is a single identifier.  Division
is only allowed by a nonzero constant, so ``3/4*x`` is a rational coefficient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .fields import QQ, ExtElem, Field, ModInt, PrimeField, SimpleExtension, _MPQ
from .poly import PolyRing, Polynomial

__all__ = [
    "SourceSpan",
    "ParseError",
    "parse_field",
    "parse_ring",
    "parse_poly",
    "print_poly",
    "format_field",
    "format_ring",
    "Fixture",
    "parse_fixture",
]


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int


class ParseError(ValueError):
    """Syntax or name error, carrying the offending span of the input."""

    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        self.message = message
        self.span = span
        self.text = text
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return f"{self.message} at {self.span.begin}..{self.span.end}"
        line_start = self.text.rfind("\n", 0, self.span.begin) + 1
        line_end = self.text.find("\n", self.span.begin)
        if line_end < 0:
            line_end = len(self.text)
        line = self.text[line_start:line_end]
        col = self.span.begin - line_start
        width = max(1, min(self.span.end, line_end) - self.span.begin)
        lineno = self.text.count("\n", 0, self.span.begin) + 1
        return f"line {lineno}: {self.message}\n  {line}\n  {' ' * col}{'^' * width}"


_TOKEN = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],;:=])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), SourceSpan(m.start(), m.end())))
        pos = m.end()
    out.append(Token("eof", "", SourceSpan(n, n)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.span, self.text)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        return self.advance()

    def expect_eof(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- fields and rings ---------------------------------------------------

    def field_(self) -> Field:
        t = self.expect_kind("ident", "a field (QQ or Fp(p))")
        if t.text == "QQ":
            base: Field = QQ
        elif t.text == "Fp":
            self.expect("(")
            pt = self.expect_kind("int", "a prime")
            self.expect(")")
            try:
                base = PrimeField(int(pt.text))
            except ValueError as exc:
                raise self.error(str(exc), pt) from None
        else:
            raise self.error(f"unknown field {t.text!r}", t)
        # extension: '[' IDENT ']' '/' '('
        if self.at("[") and self.peek().kind == "ident" and self.peek(2).text == "]" and self.peek(3).text == "/":
            self.advance()
            name_tok = self.advance()
            self.advance()
            self.advance()
            self.expect("(")
            start = self.tok
            sub = PolyRing((name_tok.text,), base)
            m = self.expr(sub)
            self.expect(")")
            if len(m.support()) == 0:
                raise self.error("minimal polynomial must be non-constant", start)
            deg = m.total_degree()
            coeffs = [m.coeff((k,)) for k in range(deg + 1)]
            try:
                return SimpleExtension(base, coeffs, name_tok.text)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
        return base

    def ring(self) -> PolyRing:
        F = self.field_()
        self.expect("[")
        names = [self.expect_kind("ident", "a variable name")]
        while self.at(","):
            self.advance()
            names.append(self.expect_kind("ident", "a variable name"))
        self.expect("]")
        seen = set()
        for t in names:
            if t.text in seen:
                raise self.error(f"duplicate variable {t.text!r}", t)
            if isinstance(F, SimpleExtension) and t.text == F.name:
                raise self.error(f"variable {t.text!r} clashes with the field generator", t)
            seen.add(t.text)
        return PolyRing([t.text for t in names], F)

    # -- expressions ----------------------------------------------------------

    def expr(self, ring: PolyRing) -> Polynomial:
        acc = self.term(ring)
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term(ring)
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self, ring: PolyRing) -> Polynomial:
        acc = self.unary(ring)
        while self.at("*") or self.at("/"):
            op = self.advance()
            start = self.tok
            rhs = self.unary(ring)
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division is only allowed by constants", start)
                if not rhs:
                    raise self.error("division by zero", start)
                acc = acc / rhs
        return acc

    def unary(self, ring: PolyRing) -> Polynomial:
        if self.at("-"):
            self.advance()
            return -self.unary(ring)
        if self.at("+"):
            self.advance()
            return self.unary(ring)
        return self.power(ring)

    def power(self, ring: PolyRing) -> Polynomial:
        base = self.atom(ring)
        if self.at("^"):
            self.advance()
            if self.tok.kind != "int":
                raise self.error("exponent must be a non-negative integer")
            k = int(self.advance().text)
            return base**k
        return base

    def atom(self, ring: PolyRing) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.advance()
            try:
                return ring.constant(int(t.text))
            except ZeroDivisionError as exc:
                raise self.error(str(exc), t) from None
        if t.kind == "ident":
            self.advance()
            if t.text in ring._index:
                return ring.gen(t.text)
            F = ring.field
            if isinstance(F, SimpleExtension) and t.text == F.name:
                return ring.constant(F.gen)
            raise self.error(f"unknown variable {t.text!r}", t)
        if self.at("("):
            self.advance()
            e = self.expr(ring)
            self.expect(")")
            return e
        found = t.text or "end of input"
        raise self.error(f"expected a number, variable or '(', found {found!r}")


def parse_field(text: str) -> Field:
    p = _Parser(text)
    F = p.field_()
    p.expect_eof()
    return F


def parse_ring(text: str) -> PolyRing:
    p = _Parser(text)
    R = p.ring()
    p.expect_eof()
    return R


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text)
    if p.tok.kind == "eof":
        raise p.error("empty expression")
    f = p.expr(ring)
    p.expect_eof()
    return f


# -- printing ----------------------------------------------------------------


def format_field(F: Field) -> str:
    if isinstance(F, SimpleExtension):
        ring = PolyRing((F.name,), F.base)
        mod = Polynomial(ring, {(k,): c for k, c in enumerate(F.modulus) if c})
        return f"{format_field(F.base)}[{F.name}]/({print_poly(mod)})"
    return repr(F)


def format_ring(R: PolyRing) -> str:
    return f"{format_field(R.field)}[{','.join(R.variables)}]"


def _coeff_text(c) -> tuple[bool, str, bool]:
    """(negative, magnitude text, needs parentheses when multiplied)."""
    if isinstance(c, _MPQ):
        return c < 0, str(abs(c)), False
    if isinstance(c, ModInt):
        return False, str(c.v), False
    if isinstance(c, ExtElem):
        nz = [k for k, a in enumerate(c.coords) if a]
        if len(nz) == 1:
            k = nz[0]
            neg, mag, _ = _coeff_text(c.coords[k])
            if k == 0:
                return neg, mag, False
            name = c.field.name
            mon = name if k == 1 else f"{name}^{k}"
            return neg, mon if mag == "1" else f"{mag}*{mon}", False
        return False, c._format(), True
    return False, str(c), False


def _monomial_text(names, exp) -> str:
    parts = []
    for v, k in zip(names, exp):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def print_poly(p: Polynomial) -> str:
    """Canonical text: terms in descending lex order of the ring variables."""
    if not p:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        neg, mag, paren = _coeff_text(c)
        mon = _monomial_text(p.ring.variables, e)
        if not mon:
            body = f"({mag})" if paren and out else mag
        elif mag == "1" and not paren:
            body = mon
        else:
            body = f"({mag})*{mon}" if paren else f"{mag}*{mon}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- fixture files -----------------------------------------------------------


@dataclass
class Fixture:
    ring: PolyRing
    ideals: dict[str, list[Polynomial]] = field(default_factory=dict)
    polys: dict[str, Polynomial] = field(default_factory=dict)
    curves: dict[str, dict[str, Polynomial]] = field(default_factory=dict)


def parse_fixture(text: str) -> Fixture:
    """Parse a fixture file: one ``ring:`` header followed by named entries."""
    p = _Parser(text)
    p.expect("ring")
    p.expect(":")
    R = p.ring()
    fx = Fixture(R)
    names: set[str] = set()
    while p.tok.kind != "eof":
        kw = p.expect_kind("ident", "'ideal', 'poly' or 'curve'")
        if kw.text not in ("ideal", "poly", "curve"):
            raise p.error(f"expected 'ideal', 'poly' or 'curve', found {kw.text!r}", kw)
        name = p.expect_kind("ident", "an entry name")
        if name.text in names:
            raise p.error(f"duplicate entry {name.text!r}", name)
        names.add(name.text)
        p.expect("=")
        if kw.text == "poly":
            fx.polys[name.text] = p.expr(R)
            continue
        p.expect("[")
        if kw.text == "ideal":
            gens = []
            if not p.at("]"):
                gens.append(p.expr(R))
                while p.at(";"):
                    p.advance()
                    if p.at("]"):
                        break
                    gens.append(p.expr(R))
            p.expect("]")
            fx.ideals[name.text] = gens
        else:
            coords: dict[str, Polynomial] = {}
            while True:
                v = p.expect_kind("ident", "a coordinate name")
                p.expect(":")
                coords[v.text] = p.expr(R)
                if p.at(";"):
                    p.advance()
                    continue
                break
            p.expect("]")
            fx.curves[name.text] = coords
    return fx
