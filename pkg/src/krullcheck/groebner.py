"""Buchberger's algorithm and the ideal operations built on it.

The engine works on an internal term representation: a polynomial is a list
of ``(key, exp, coeff)`` triples sorted by ``key`` ascending, where ``key`` is
the order's (negated) weight vector of ``exp``.  Keys are linear in the
exponent, so multiplying by a monomial shifts every key by the same amount.
Normal forms are computed with a heap of pending keys, which keeps each
reduction step proportional to the length of the reducer.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from operator import add, sub
from typing import Iterable, Sequence

from .poly import Block, Grevlex, Lex, MonomialOrder, PolyRing, Polynomial, RingMismatchError

__all__ = [
    "GroebnerBasis",
    "Ideal",
    "buchberger",
    "normal_form",
    "ideal_member",
    "ideal_equal",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "ideal_intersection",
    "ideal_quotient",
    "saturation",
    "saturation_by_elimination",
    "eliminate",
    "radical_member",
    "divide_exact",
    "s_polynomial",
    "DEFAULT_ORDER",
    "MEMBERSHIP_ORDER",
]

DEFAULT_ORDER: MonomialOrder = Lex()
# membership does not depend on the order; grevlex bases are far cheaper
MEMBERSHIP_ORDER: MonomialOrder = Grevlex()


# -- internal representation ---------------------------------------------------


def _mask(e) -> int:
    m = 0
    for i, k in enumerate(e):
        if k:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _internal(p: Polynomial, keyf) -> list:
    return sorted(((keyf(e), e, c) for e, c in p.items()), key=lambda t: t[0])


def _monic_internal(terms: list) -> list:
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, e, c * inv) for k, e, c in terms]


def _to_poly(ring: PolyRing, terms: list) -> Polynomial:
    return Polynomial(ring, {e: c for _, e, c in terms})


class _Reducer:
    """A list of monic reducers with a divisibility prefilter."""

    def __init__(self):
        self.items: list[tuple[int, tuple, list]] = []

    def add(self, g: list):
        self.items.append((_mask(g[0][1]), g[0][1], g))

    def find(self, e):
        m = _mask(e)
        for gm, ge, g in self.items:
            if gm & ~m == 0 and _divides(ge, e):
                return g
        return None


def _normal_form(terms: list, red: _Reducer, full: bool = True) -> list:
    """Remainder of ``terms`` modulo the reducers; output sorted by key."""
    acc = {k: [e, c] for k, e, c in terms}
    heap = list(acc)
    heapq.heapify(heap)
    out = []
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = pop(heap)
        ent = acc.pop(k, None)
        if ent is None:
            continue
        e, c = ent
        g = red.find(e)
        if g is None:
            out.append((k, e, c))
            if not full:
                while heap:
                    k2 = pop(heap)
                    ent2 = acc.pop(k2, None)
                    if ent2 is not None:
                        out.append((k2, ent2[0], ent2[1]))
                break
            continue
        gk0, ge0, _ = g[0]
        mk = tuple(map(sub, k, gk0))
        me = tuple(map(sub, e, ge0))
        for gk, ge, gc in g[1:]:
            nk = tuple(map(add, gk, mk))
            v = acc.get(nk)
            if v is None:
                acc[nk] = [tuple(map(add, ge, me)), -(c * gc)]
                push(heap, nk)
            else:
                s = v[1] - c * gc
                if s:
                    v[1] = s
                else:
                    del acc[nk]
    return out


# -- public types ----------------------------------------------------------------


@dataclass(eq=False)
class GroebnerBasis:
    """A reduced Gröbner basis: monic elements sorted by leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    elements: list[Polynomial]
    _internal: list = field(default_factory=list, repr=False)
    stats: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._internal:
            keyf = self.order.keyfunc(self.ring)
            self._internal = [_internal(g, keyf) for g in self.elements]
        self._reducer = _Reducer()
        for g in self._internal:
            self._reducer.add(g)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list[tuple]:
        return [g[0][1] for g in self._internal]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and bool(self.elements[0])

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring} vs {self.ring}")
        if not p:
            return p
        keyf = self.order.keyfunc(self.ring)
        return _to_poly(self.ring, _normal_form(_internal(p, keyf), self._reducer))

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def as_set(self) -> frozenset:
        return frozenset(self.elements)


def _run_buchberger(ring: PolyRing, gens: Sequence[Polynomial], order: MonomialOrder) -> GroebnerBasis:
    keyf = order.keyfunc(ring)
    n = ring.nvars
    unit_key = [keyf(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]

    def key_of_mon(m):
        k = None
        for i, a in enumerate(m):
            if a:
                part = tuple(a * x for x in unit_key[i])
                k = part if k is None else tuple(map(add, k, part))
        return k if k is not None else keyf(m)

    polys: list[list] = []
    active: list[int] = []
    pairs: list = []
    stats = {"pairs": 0, "reductions_to_zero": 0, "criteria_skipped": 0}

    def spoly(i, j):
        f, g = polys[i], polys[j]
        L = _lcm(f[0][1], g[0][1])
        mf = tuple(map(sub, L, f[0][1]))
        mg = tuple(map(sub, L, g[0][1]))
        kf, kg = key_of_mon(mf), key_of_mon(mg)
        acc = {}
        for k, e, c in f[1:]:
            acc[tuple(map(add, k, kf))] = [tuple(map(add, e, mf)), c]
        for k, e, c in g[1:]:
            nk = tuple(map(add, k, kg))
            v = acc.get(nk)
            if v is None:
                acc[nk] = [tuple(map(add, e, mg)), -c]
            else:
                s = v[1] - c
                if s:
                    v[1] = s
                else:
                    del acc[nk]
        return [(k, v[0], v[1]) for k, v in acc.items()]

    def update(h: int):
        nonlocal active, pairs
        he = polys[h][0][1]
        # Gebauer-Moeller installation of the new element h
        C = [(g, _lcm(he, polys[g][0][1])) for g in active]
        D = []
        while C:
            g1, L1 = C.pop(0)
            g1e = polys[g1][0][1]
            if _coprime(he, g1e) or (
                not any(_divides(L2, L1) for _, L2 in C) and not any(_divides(L2, L1) for _, L2 in D)
            ):
                D.append((g1, L1))
            else:
                stats["criteria_skipped"] += 1
        new_pairs = []
        for g, L in D:
            if _coprime(he, polys[g][0][1]):
                stats["criteria_skipped"] += 1
                continue
            new_pairs.append((tuple(-k for k in key_of_mon(L)), min(g, h), max(g, h), L))
        kept = []
        for item in pairs:
            _, i, j, L = item
            if (
                _divides(he, L)
                and _lcm(polys[i][0][1], he) != L
                and _lcm(he, polys[j][0][1]) != L
            ):
                stats["criteria_skipped"] += 1
                continue
            kept.append(item)
        kept.extend(new_pairs)
        heapq.heapify(kept)
        pairs = kept
        active = [g for g in active if not _divides(he, polys[g][0][1])]
        active.append(h)

    red = _Reducer()

    def rebuild_reducer():
        nonlocal red
        red = _Reducer()
        for g in active:
            red.add(polys[g])

    inputs = sorted(
        (_internal(g, keyf) for g in gens if g),
        key=lambda t: (sum(t[0][1]), t[0][0]),
    )
    for f in inputs:
        r = _normal_form(f, red)
        if not r:
            continue
        r = _monic_internal(r)
        polys.append(r)
        update(len(polys) - 1)
        rebuild_reducer()
        if len(r) == 1 and not any(r[0][1]):
            break

    while pairs and not _is_unit_basis(polys, active):
        _, i, j, _ = heapq.heappop(pairs)
        stats["pairs"] += 1
        s = spoly(i, j)
        if not s:
            stats["reductions_to_zero"] += 1
            continue
        r = _normal_form(s, red)
        if not r:
            stats["reductions_to_zero"] += 1
            continue
        r = _monic_internal(r)
        polys.append(r)
        update(len(polys) - 1)
        red.add(r)
        red.items = [it for it in red.items if not (it[2] is not r and _divides(r[0][1], it[1]))]

    # interreduce the minimal basis
    basis = [polys[g] for g in active]
    if _is_unit_basis(polys, active):
        one = [t for t in basis if not any(t[0][1])][0]
        basis = [one]
    basis.sort(key=lambda t: t[0][0])
    reduced = []
    for idx, g in enumerate(basis):
        others = _Reducer()
        for jdx, h in enumerate(basis):
            if jdx != idx:
                others.add(h)
        tail = _normal_form(g[1:], others) if len(g) > 1 else []
        reduced.append([g[0]] + tail)
    reduced.sort(key=lambda t: t[0][0])
    elements = [_to_poly(ring, g) for g in reduced]
    return GroebnerBasis(ring, order, elements, _internal=reduced, stats=stats)


def _is_unit_basis(polys, active) -> bool:
    return any(not any(polys[g][0][1]) for g in active)


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
    return _run_buchberger(ring, gens, order or DEFAULT_ORDER)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(p)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or DEFAULT_ORDER
    fe, fc = f.leading_term(order)
    ge, gc = g.leading_term(order)
    L = _lcm(fe, ge)
    R = f.ring
    return R.monomial(tuple(map(sub, L, fe)), 1 / fc) * f - R.monomial(tuple(map(sub, L, ge)), 1 / gc) * g


# -- ideals ------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced bases.

    An empty generator list is the zero ideal.
    """

    def __init__(self, gens: Iterable[Polynomial], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("the ring of an ideal without generators must be given")
            ring = gens[0].ring
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatchError(f"generator {g!r} is not in {ring}")
        self.ring = ring
        self.gens: tuple[Polynomial, ...] = tuple(g for g in gens if g)
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal([{', '.join(map(str, self.gens))}])"

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or DEFAULT_ORDER
        with self._lock:
            gb = self._cache.get(order)
        if gb is None:
            if self.is_zero():
                gb = GroebnerBasis(self.ring, order, [])
            else:
                gb = _run_buchberger(self.ring, self.gens, order)
            with self._lock:
                gb = self._cache.setdefault(order, gb)
        return gb

    def contains(self, p: Polynomial, order: MonomialOrder | None = None) -> bool:
        return ideal_member(p, self, order)

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.groebner(MEMBERSHIP_ORDER).is_unit()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def change_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal([g.change_ring(ring) for g in self.gens], ring)


def _ring_check(*items):
    rings = {x.ring for x in items}
    if len(rings) > 1:
        raise RingMismatchError("operands live in different rings")


def ideal_member(p: Polynomial, I: Ideal, order: MonomialOrder | None = None) -> bool:
    _ring_check(p, I)
    if not p:
        return True
    return I.groebner(order or MEMBERSHIP_ORDER).contains(p)


def ideal_contains(A: Ideal, B: Ideal, order: MonomialOrder | None = None) -> bool:
    """True iff B is a subset of A."""
    return all(ideal_member(g, A, order) for g in B.gens)


def ideal_equal(A: Ideal, B: Ideal, order: MonomialOrder | None = None) -> bool:
    _ring_check(A, B)
    order = order or MEMBERSHIP_ORDER
    return A.groebner(order).as_set() == B.groebner(order).as_set()


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _ring_check(A, B)
    return Ideal(list(A.gens) + [g for g in B.gens if g not in A.gens], A.ring)


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    _ring_check(A, B)
    seen = {}
    for f in A.gens:
        for g in B.gens:
            h = f * g
            seen.setdefault(h, None)
    return Ideal(list(seen), A.ring)


def ideal_power(A: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative ideal power")
    result = Ideal([A.ring.one], A.ring)
    for _ in range(k):
        result = ideal_product(result, A)
    return result


def eliminate(I: Ideal, drop: Iterable[str], order_inner: str = "grevlex") -> Ideal:
    """``I`` intersected with the polynomial ring in the remaining variables.

    The result lives in the smaller ring; a zero intersection is returned as
    the zero ideal.
    """
    drop = set(drop)
    R = I.ring
    unknown = drop - set(R.variables)
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    keep = [v for v in R.variables if v not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    sub_ring = PolyRing(keep, R.field)
    if I.is_zero():
        return Ideal([], sub_ring)
    G = I.groebner(Block(keep, inner=order_inner))
    drop_idx = [R.index(v) for v in drop]
    kept = [g for g in G.elements if all(e[i] == 0 for e in g._terms for i in drop_idx)]
    return Ideal([g.change_ring(sub_ring) for g in kept], sub_ring)


def ideal_intersection(A: Ideal, B: Ideal) -> Ideal:
    """A ∩ B via eliminating s from s*A + (1 - s)*B."""
    _ring_check(A, B)
    R = A.ring
    if A.is_zero() or B.is_zero():
        return Ideal([], R)
    s = R.fresh_variable("s")
    RS = R.extend([s])
    sv = RS.gen(s)
    gens = [sv * g.change_ring(RS) for g in A.gens] + [(1 - sv) * g.change_ring(RS) for g in B.gens]
    out = eliminate(Ideal(gens, RS), [s])
    return Ideal([g.change_ring(R) for g in out.gens], R)


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """The polynomial q with g = q*f; raises ValueError when f does not divide g."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    _ring_check(g, f)
    return _exact_quotient(g, f)


def _exact_quotient(g: Polynomial, f: Polynomial) -> Polynomial:
    order = DEFAULT_ORDER
    fe, fc = f.leading_term(order)
    R = g.ring
    q = R.zero
    r = g
    while r:
        e, c = r.leading_term(order)
        if not _divides(fe, e):
            raise ValueError("f does not divide g")
        t = R.monomial(tuple(map(sub, e, fe)), c / fc)
        q = q + t
        r = r - t * f
    return q


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = {g : g*f in I}."""
    _ring_check(I, f)
    if not f:
        raise ZeroDivisionError("ideal quotient by the zero polynomial")
    if f.is_constant():
        return I
    if I.is_zero():
        return I
    inter = ideal_intersection(I, Ideal([f], I.ring))
    return Ideal([divide_exact(g, f) for g in inter.gens], I.ring)


def saturation(I: Ideal, f: Polynomial, max_steps: int = 64, cross_check: bool = False) -> Ideal:
    """I : f^∞ by iterated quotients until the ideal stops growing."""
    _ring_check(I, f)
    if not f:
        raise ZeroDivisionError("saturation by the zero polynomial")
    cur = I
    for _ in range(max_steps):
        nxt = ideal_quotient(cur, f)
        if ideal_contains(cur, nxt):
            break
        cur = nxt
    else:
        raise RuntimeError("saturation did not stabilise")
    if cross_check:
        other = saturation_by_elimination(I, f)
        if not ideal_equal(cur, other):
            raise AssertionError("iterated-quotient and elimination saturations disagree")
    return cur


def saturation_by_elimination(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^∞ as (I + <1 - w f>) ∩ k[x]."""
    _ring_check(I, f)
    R = I.ring
    w = R.fresh_variable("w")
    RW = R.extend([w])
    wv = RW.gen(w)
    gens = [g.change_ring(RW) for g in I.gens] + [1 - wv * f.change_ring(RW)]
    out = eliminate(Ideal(gens, RW), [w])
    return Ideal([g.change_ring(R) for g in out.gens], R)


def radical_member(p: Polynomial, I: Ideal) -> bool:
    """True iff some power of p lies in I (Rabinowitsch: 1 in I + <1 - w p>)."""
    _ring_check(p, I)
    if not p:
        return True
    R = I.ring
    w = R.fresh_variable("w")
    RW = R.extend([w])
    gens = [g.change_ring(RW) for g in I.gens] + [1 - RW.gen(w) * p.change_ring(RW)]
    return Ideal(gens, RW).is_unit()
