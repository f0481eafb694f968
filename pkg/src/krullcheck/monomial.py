"""Monomial ideals: Newton-polyhedron integral closure and primary decomposition.

A monomial ideal is stored by the antichain of exponent vectors of its
minimal generators.  Membership in the Newton polyhedron
``conv(generators) + R_{>=0}^d`` is an exact linear feasibility problem,
solved here by Fourier–Motzkin elimination over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groebner import Ideal
from .poly import PolyRing, Polynomial

__all__ = [
    "MonomialIdeal",
    "NewtonPolyhedron",
    "minimalize",
    "newton_member",
    "newton_weights",
    "mono_integral_closure",
    "mono_intersection",
    "mono_is_primary",
    "mono_primary_decomposition",
    "mono_radical_variables",
]


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(vectors: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Antichain of minimal elements under the componentwise order."""
    vs = sorted({tuple(int(k) for k in v) for v in vectors}, key=lambda v: (sum(v), v))
    if not vs:
        raise ValueError("need at least one exponent vector")
    out: list[tuple[int, ...]] = []
    for v in vs:
        if not any(_leq(u, v) for u in out):
            out.append(v)
    return tuple(sorted(out, reverse=True))


class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    def __init__(self, ring: PolyRing, exponents: Iterable[Sequence[int]]):
        self.ring = ring
        gens = minimalize(exponents)
        for g in gens:
            if len(g) != ring.nvars:
                raise ValueError(f"exponent {g} does not match {ring}")
        self.gens: tuple[tuple[int, ...], ...] = gens

    @classmethod
    def from_polys(cls, polys: Iterable[Polynomial], ring: PolyRing | None = None) -> "MonomialIdeal":
        polys = list(polys)
        ring = ring or polys[0].ring
        exps = []
        for p in polys:
            if not p.is_monomial():
                raise ValueError(f"{p} is not a monomial")
            exps.append(next(iter(p._terms)))
        return cls(ring, exps)

    @classmethod
    def from_ideal(cls, I: Ideal) -> "MonomialIdeal":
        """Monomial ideal equal to ``I``; raises ValueError if ``I`` is not monomial.

        An ideal is monomial iff its reduced Gröbner basis consists of monomials.
        """
        G = I.groebner()
        if not all(g.is_monomial() for g in G):
            raise ValueError("ideal is not a monomial ideal")
        return cls.from_polys(list(G), I.ring)

    def to_ideal(self) -> Ideal:
        return Ideal([self.ring.monomial(g) for g in self.gens], self.ring)

    def polys(self) -> list[Polynomial]:
        return [self.ring.monomial(g) for g in self.gens]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.ring == other.ring and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.ring, frozenset(self.gens)))

    def __contains__(self, v) -> bool:
        if isinstance(v, Polynomial):
            return all(any(_leq(g, e) for g in self.gens) for e in v._terms)
        return any(_leq(g, tuple(v)) for g in self.gens)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return all(g in other for g in self.gens)

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def texts(self) -> list[str]:
        return [str(p) for p in self.polys()]

    def __repr__(self):
        return f"<{', '.join(self.texts())}>"

    def sort_key(self):
        return (len(self.gens), sorted(self.texts()))


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(generators) + nonnegative orthant."""

    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, M: MonomialIdeal) -> "NewtonPolyhedron":
        return cls(M.gens)

    def __contains__(self, v) -> bool:
        return newton_member(v, self)


# -- exact Fourier–Motzkin ------------------------------------------------------


def _fm_solve(A: list[list[Fraction]], b: list[Fraction], nvars: int) -> list[Fraction] | None:
    """A point x with A x <= b, or None when the system is infeasible."""
    systems = []
    rows = [(list(a), bb) for a, bb in zip(A, b)]
    for k in range(nvars - 1, -1, -1):
        systems.append(rows)
        pos, neg, zero = [], [], []
        for a, bb in rows:
            if a[k] > 0:
                pos.append((a, bb))
            elif a[k] < 0:
                neg.append((a, bb))
            else:
                zero.append((a, bb))
        new = []
        for a, bb in zero:
            if any(a):
                new.append((a, bb))
            elif bb < 0:
                return None
        seen = set()
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = 1 / ap[k], -1 / an[k]
                a = [x * sp + y * sn for x, y in zip(ap, an)]
                a[k] = Fraction(0)
                bb = bp * sp + bn * sn
                key = _normalized(a, bb)
                if key in seen:
                    continue
                seen.add(key)
                new.append((a, bb))
        rows = new
    if any(bb < 0 for a, bb in rows):
        return None
    x = [Fraction(0)] * nvars
    for k, sysk in zip(range(nvars), reversed(systems)):
        lo, hi = None, None
        for a, bb in sysk:
            if not a[k]:
                continue
            rest = bb - sum(a[j] * x[j] for j in range(k))
            bound = rest / a[k]
            if a[k] > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None:
            lo = hi if hi is not None and hi < 0 else Fraction(0)
        x[k] = lo
    return x


def _normalized(a, b):
    scale = max((abs(x) for x in a), default=0) or abs(b) or 1
    return tuple(x / scale for x in a), b / scale


def _convex_weights(points: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """lambda >= 0 with sum 1 and sum lambda_i p_i <= v, via Fourier–Motzkin."""
    m = len(points)
    d = len(v)
    if m == 1:
        return [Fraction(1)] if _leq(points[0], v) else None
    # substitute lambda_last = 1 - sum(others)
    last = points[-1]
    A, b = [], []
    for j in range(d):
        A.append([Fraction(points[i][j] - last[j]) for i in range(m - 1)])
        b.append(Fraction(v[j] - last[j]))
    for i in range(m - 1):
        row = [Fraction(0)] * (m - 1)
        row[i] = Fraction(-1)
        A.append(row)
        b.append(Fraction(0))
    A.append([Fraction(1)] * (m - 1))
    b.append(Fraction(1))
    x = _fm_solve(A, b, m - 1)
    if x is None:
        return None
    return x + [1 - sum(x)]


def newton_weights(v: Sequence[int], N: NewtonPolyhedron | Sequence[Sequence[int]]) -> dict[int, Fraction] | None:
    """Convex weights on generators certifying ``v`` lies in the polyhedron.

    Returns ``{generator index: weight}`` or None.  By Carathéodory at most
    d + 1 generators are needed, so only subsets of that size are tried.
    """
    gens = N.generators if isinstance(N, NewtonPolyhedron) else tuple(tuple(g) for g in N)
    v = tuple(v)
    if not gens:
        return None
    d = len(v)
    if any(len(g) != d for g in gens):
        raise ValueError("arity mismatch between point and polyhedron")
    for i, g in enumerate(gens):
        if _leq(g, v):
            return {i: Fraction(1)}
    k = min(len(gens), d + 1)
    for size in range(2, k + 1):
        for idx in itertools.combinations(range(len(gens)), size):
            lam = _convex_weights([gens[i] for i in idx], v)
            if lam is not None:
                return {i: w for i, w in zip(idx, lam) if w}
    return None


def newton_member(v: Sequence[int], N: NewtonPolyhedron | MonomialIdeal | Sequence[Sequence[int]]) -> bool:
    if isinstance(N, MonomialIdeal):
        N = NewtonPolyhedron.of(N)
    return newton_weights(v, N) is not None


def _vertex_generators(gens: Sequence[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Drop generators lying in the polyhedron of the others; the polyhedron is unchanged."""
    kept = list(gens)
    for g in sorted(gens, key=lambda g: (-sum(g), g)):
        others = [h for h in kept if h != g]
        if others and newton_member(g, others):
            kept = others
    return tuple(kept)


def mono_integral_closure(M: MonomialIdeal) -> MonomialIdeal:
    """All lattice points of the Newton polyhedron, minimalized.

    Minimal generators of the closure divide the componentwise maximum of the
    input generators: if a point exceeds every generator in coordinate j,
    lowering that coordinate by one keeps it in the polyhedron.
    """
    if M.is_unit():
        return M
    N = NewtonPolyhedron(_vertex_generators(M.gens))
    box = [max(g[j] for g in M.gens) for j in range(M.ring.nvars)]
    found = []
    for v in itertools.product(*(range(b + 1) for b in box)):
        if any(_leq(u, v) for u in found):
            continue
        if newton_member(v, N):
            found.append(v)
    return MonomialIdeal(M.ring, found)


def mono_intersection(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    if A.ring != B.ring:
        raise ValueError("monomial ideals live in different rings")
    return MonomialIdeal(A.ring, [tuple(max(x, y) for x, y in zip(a, b)) for a in A.gens for b in B.gens])


def _support(M: MonomialIdeal) -> frozenset[int]:
    return frozenset(i for g in M.gens for i, k in enumerate(g) if k)


def mono_radical_variables(M: MonomialIdeal) -> frozenset[int]:
    """Indices of the variables in the radical of M, i.e. those with a pure power in M."""
    return frozenset(i for i in (_pure_power(g) for g in M.gens) if i is not None)


def _pure_power(g) -> int | None:
    nz = [i for i, k in enumerate(g) if k]
    return nz[0] if len(nz) == 1 else None


def mono_is_primary(M: MonomialIdeal) -> bool:
    """Every variable occurring in a minimal generator has a pure power among them."""
    if M.is_unit():
        return False
    powers = {_pure_power(g) for g in M.gens} - {None}
    return _support(M) <= powers


def _irreducible_components(M: MonomialIdeal) -> list[MonomialIdeal]:
    for g in M.gens:
        nz = [i for i, k in enumerate(g) if k]
        if len(nz) > 1:
            i = nz[0]
            m1 = tuple(g[i] if j == i else 0 for j in range(len(g)))
            m2 = tuple(0 if j == i else k for j, k in enumerate(g))
            left = MonomialIdeal(M.ring, M.gens + (m1,))
            right = MonomialIdeal(M.ring, M.gens + (m2,))
            return _irreducible_components(left) + _irreducible_components(right)
    return [M]


def _intersect_all(ring, comps: Sequence[MonomialIdeal]) -> MonomialIdeal:
    acc = MonomialIdeal(ring, [(0,) * ring.nvars])
    for c in comps:
        acc = mono_intersection(acc, c)
    return acc


def _prune(ring, comps: list[MonomialIdeal]) -> list[MonomialIdeal]:
    comps = sorted(set(comps), key=MonomialIdeal.sort_key)
    changed = True
    while changed and len(comps) > 1:
        changed = False
        for i in range(len(comps) - 1, -1, -1):
            others = comps[:i] + comps[i + 1:]
            if _intersect_all(ring, others) <= comps[i]:
                comps = others
                changed = True
                break
    return comps


def mono_primary_decomposition(M: MonomialIdeal) -> list[MonomialIdeal]:
    """Irredundant primary decomposition by splitting mixed generators.

    A generator m = m1*m2 with coprime nontrivial parts gives
    I = (I + <m1>) ∩ (I + <m2>); the leaves are generated by pure powers.
    Leaves with equal radicals are intersected, then redundant components
    are dropped.  Output is sorted by generator count, then printed form.
    """
    if M.is_unit():
        return []
    ring = M.ring
    leaves = _prune(ring, _irreducible_components(M))
    groups: dict[frozenset, list[MonomialIdeal]] = {}
    for c in leaves:
        groups.setdefault(_support(c), []).append(c)
    comps = [_intersect_all(ring, cs) for cs in groups.values()]
    return _prune(ring, comps)
