"""Multivariate polynomials over an exact field, monomial orders, substitution
and formal differentiation.

A :class:`Polynomial` is an immutable map from dense exponent tuples to
nonzero coefficients.  Monomial orders are matrix orders: each order turns an
exponent vector into a sort key, and ``min`` over keys is the leading term.
Keys are linear in the exponents, which lets the Gröbner engine shift a key
by a monomial with a single tuple addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .fields import QQ, ExtElem, Field, IncompatibleFieldError, ModInt, SimpleExtension, _MPQ

__all__ = [
    "PolyRing",
    "Polynomial",
    "MonomialOrder",
    "Lex",
    "Grevlex",
    "Block",
    "RingMismatchError",
    "leading_monomial",
    "leading_coeff_in_subring",
    "substitute",
    "partial_derivative",
]


class RingMismatchError(ValueError):
    """Polynomials from different rings were combined."""


class PolyRing:
    """``field[variables]`` with the variable order fixed by the list."""

    def __init__(self, variables: Sequence[str], field: Field = QQ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable in {variables}")
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if isinstance(field, SimpleExtension) and field.name in variables:
            raise ValueError(f"variable {field.name} clashes with the field generator")
        self.variables = variables
        self.field = field
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self._zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.variables)}]"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.variables == self.variables and other.field == self.field

    def __hash__(self):
        return hash((self.variables, self.field))

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r} in {self}") from None

    def gen(self, var: str) -> "Polynomial":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.variables)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars or min(exp) < 0:
            raise ValueError(f"bad exponent vector {exp} for {self}")
        c = self.field.coerce(coeff)
        return Polynomial(self, {exp: c} if c else {})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.change_ring(self)
        return self.constant(x)

    def extend(self, new_vars: Sequence[str], front: bool = True) -> "PolyRing":
        """Ring with extra variables, placed before (or after) the old ones."""
        new_vars = tuple(new_vars)
        vs = new_vars + self.variables if front else self.variables + new_vars
        return PolyRing(vs, self.field)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.variables, field)

    def fresh_variable(self, stem: str = "w") -> str:
        name = stem
        k = 0
        taken = set(self.variables)
        if isinstance(self.field, SimpleExtension):
            taken.add(self.field.name)
        while name in taken:
            k += 1
            name = f"{stem}{k}"
        return name


def _coerce_coeff(field: Field, c):
    if field.contains(c):
        return c
    return field.coerce(c)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        F = ring.field
        out = {}
        for e, c in terms.items():
            if not F.contains(c):
                c = F.coerce(c)
            if c:
                out[e] = c
        self._terms = out
        self._hash = None

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self, order: "MonomialOrder | None" = None) -> list[tuple[tuple, object]]:
        """Terms in strictly descending order (ring's lex order by default)."""
        key = (order or Lex()).keyfunc(self.ring)
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring._zero_exp in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_coeff(self):
        return self._terms.get(self.ring._zero_exp, self.ring.field.zero)

    def coeff(self, exp: Sequence[int]):
        return self._terms.get(tuple(exp), self.ring.field.zero)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, var: str) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def support(self) -> set[str]:
        vs = set()
        for e in self._terms:
            vs.update(v for v, k in zip(self.ring.variables, e) if k)
        return vs

    def content_monomial(self) -> tuple:
        """Exponent of the largest monomial dividing every term."""
        if not self._terms:
            return self.ring._zero_exp
        it = iter(self._terms)
        g = list(next(it))
        for e in it:
            g = [min(a, b) for a, b in zip(g, e)]
        return tuple(g)

    def divide_monomial(self, exp: Sequence[int]) -> "Polynomial":
        exp = tuple(exp)
        out = {}
        for e, c in self._terms.items():
            d = tuple(a - b for a, b in zip(e, exp))
            if min(d) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[d] = c
        return Polynomial(self.ring, out)

    def monic(self, order: "MonomialOrder | None" = None) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coeff(order)
        inv = 1 / lc
        return Polynomial(self.ring, {e: c * inv for e, c in self._terms.items()})

    def leading_term(self, order: "MonomialOrder | None" = None) -> tuple[tuple, object]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        key = (order or Lex()).keyfunc(self.ring)
        e = min(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self, order: "MonomialOrder | None" = None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: "MonomialOrder | None" = None):
        return self.leading_term(order)[1]

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Map into ``ring`` by variable name; missing variables must not occur."""
        idx = []
        for v, in_use in zip(self.ring.variables, self._used_mask()):
            if v in ring._index:
                idx.append(ring._index[v])
            elif in_use:
                raise RingMismatchError(f"variable {v} does not exist in {ring}")
            else:
                idx.append(None)
        out = {}
        zero = [0] * ring.nvars
        for e, c in self._terms.items():
            ne = list(zero)
            for k, i in zip(e, idx):
                if k:
                    ne[i] = k
            out[tuple(ne)] = _coerce_coeff(ring.field, c)
        return Polynomial(ring, out)

    def _used_mask(self):
        mask = [False] * self.ring.nvars
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    mask[i] = True
        return mask

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except (IncompatibleFieldError, TypeError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_constant():
            c = o.constant_coeff()
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {e: a * c for e, a in self._terms.items()})
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None or not o.is_constant():
            return NotImplemented
        c = o.constant_coeff()
        if not c:
            raise ZeroDivisionError("division by zero")
        inv = 1 / c
        return Polynomial(self.ring, {e: a * inv for e, a in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            o = self._lift(other)
        except RingMismatchError:
            return False
        return o is not None and self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .parse import print_poly

        return print_poly(self)

    def __str__(self):
        return self.__repr__()


# -- monomial orders ----------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Base class; subclasses produce the rows of a weight matrix."""

    def rows(self, ring: PolyRing) -> tuple[tuple[int, ...], ...]:
        raise NotImplementedError

    def keyfunc(self, ring: PolyRing):
        return _compiled_key(self, ring)

    def key_of(self, ring: PolyRing, exp: Sequence[int]) -> tuple:
        return self.keyfunc(ring)(tuple(exp))


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Lexicographic order; ``variables`` lists them from largest to smallest
    (default: the ring's declared order)."""

    variables: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.variables is not None:
            object.__setattr__(self, "variables", tuple(self.variables))

    def rows(self, ring):
        vs = self.variables or ring.variables
        _check_cover(vs, ring)
        rows = []
        for v in vs:
            r = [0] * ring.nvars
            r[ring.index(v)] = 1
            rows.append(tuple(r))
        return tuple(rows)

    def __str__(self):
        return "lex" if self.variables is None else f"lex({','.join(self.variables)})"


@dataclass(frozen=True)
class Grevlex(MonomialOrder):
    """Graded reverse lexicographic order."""

    variables: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.variables is not None:
            object.__setattr__(self, "variables", tuple(self.variables))

    def rows(self, ring):
        vs = self.variables or ring.variables
        _check_cover(vs, ring)
        rows = [tuple(1 for _ in range(ring.nvars))]
        for v in reversed(vs[1:]):
            r = [0] * ring.nvars
            r[ring.index(v)] = -1
            rows.append(tuple(r))
        return tuple(rows)

    def __str__(self):
        return "grevlex" if self.variables is None else f"grevlex({','.join(self.variables)})"


@dataclass(frozen=True)
class Block(MonomialOrder):
    """Elimination order with the variables in ``low`` below all others.

    Inside each block the variables keep the ring's relative order and are
    compared with ``inner`` (``"lex"`` or ``"grevlex"``).
    """

    low: frozenset
    inner: str = "lex"
    inner_low: str | None = None

    def __init__(self, low: Iterable[str], inner: str = "lex", inner_low: str | None = None):
        object.__setattr__(self, "low", frozenset(low))
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "inner_low", inner_low)

    def split(self, ring: PolyRing) -> tuple[tuple[str, ...], tuple[str, ...]]:
        unknown = self.low - set(ring.variables)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)} in {ring}")
        high = tuple(v for v in ring.variables if v not in self.low)
        low = tuple(v for v in ring.variables if v in self.low)
        return high, low

    def rows(self, ring):
        high, low = self.split(ring)
        rows = []
        for block, kind in ((high, self.inner), (low, self.inner_low or self.inner)):
            if not block:
                continue
            sub = PolyRing(block, ring.field)
            inner = Lex() if kind == "lex" else Grevlex()
            for r in inner.rows(sub):
                full = [0] * ring.nvars
                for v, w in zip(block, r):
                    full[ring.index(v)] = w
                rows.append(tuple(full))
        return tuple(rows)

    def __str__(self):
        low = ",".join(sorted(self.low))
        return f"block(low={{{low}}},{self.inner})"


def _check_cover(vs, ring):
    if sorted(vs) != sorted(ring.variables):
        raise ValueError(f"order variables {vs} do not match ring {ring.variables}")


@lru_cache(maxsize=256)
def _compiled_key(order: MonomialOrder, ring: PolyRing):
    rows = order.rows(ring)
    n = ring.nvars
    perm = []
    for r in rows:
        nz = [i for i, w in enumerate(r) if w]
        if len(nz) == 1 and r[nz[0]] == 1:
            perm.append(nz[0])
        else:
            perm = None
            break
    if perm is not None and len(perm) == n:
        if perm == list(range(n)):
            return lambda e: tuple([-k for k in e])
        return lambda e: tuple([-e[i] for i in perm])
    sparse = [tuple((i, w) for i, w in enumerate(r) if w) for r in rows]
    return lambda e: tuple([-sum(w * e[i] for i, w in r) for r in sparse])


# -- functional API -----------------------------------------------------------


def leading_monomial(p: Polynomial, order: MonomialOrder | None = None) -> tuple:
    return p.leading_monomial(order)


def leading_coeff_in_subring(p: Polynomial, U: Iterable[str], order: MonomialOrder | None = None) -> Polynomial:
    """Coefficient of ``p`` at its leading monomial in the variables outside
    ``U``, viewing ``p`` as a polynomial over ``k(U)``."""
    U = frozenset(U)
    if order is None:
        order = Block(U)
    if not isinstance(order, Block) or order.low != U:
        raise ValueError("leading coefficients over k[U] need a block order with U lowest")
    if not p:
        raise ValueError("the zero polynomial has no leading coefficient")
    ring = p.ring
    high_idx = [ring.index(v) for v in ring.variables if v not in U]
    lm = p.leading_monomial(order)
    top = tuple(lm[i] for i in high_idx)
    out = {}
    for e, c in p.items():
        if tuple(e[i] for i in high_idx) == top:
            ne = list(e)
            for i in high_idx:
                ne[i] = 0
            out[tuple(ne)] = c
    return Polynomial(ring, out)


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial], target: PolyRing | None = None) -> Polynomial:
    """Ring homomorphism sending each variable of ``p`` to a polynomial of
    ``target``; coefficients are coerced into the target field."""
    if target is None:
        vals = [v for v in assignment.values() if isinstance(v, Polynomial)]
        target = vals[0].ring if vals else p.ring
    images = []
    for v in p.ring.variables:
        if v not in assignment:
            raise KeyError(f"no value assigned to variable {v}")
        images.append(target(assignment[v]))
    F = target.field
    powers: list[dict[int, Polynomial]] = [{0: target.one, 1: img} for img in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k // 2) * power(i, k - k // 2)
        return cache[k]

    acc = target.zero
    for e, c in p.items():
        term = target.constant(_coerce_coeff(F, c))
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    i = p.ring.index(var)
    out = {}
    for e, c in p.items():
        k = e[i]
        if not k:
            continue
        d = c * k
        if d:
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = d
    return Polynomial(p.ring, out)
