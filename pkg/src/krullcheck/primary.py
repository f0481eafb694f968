"""Primary testing for ideals with prime monomial radical, and non-primariness witnesses.

When the radical of I is P = <V> for a set V of variables, let U be the
remaining variables.  Over k(U) the ideal becomes zero-dimensional and
primary, and its contraction back to k[U, V] is the saturation I : f^inf,
where f is the lcm of the leading coefficients (in k[U]) of a Gröbner basis
under a block order with U lowest.  I is primary exactly when the
saturation adds nothing.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, Ideal, ideal_equal, ideal_member, radical_member, saturation
from .poly import Block, Lex, Polynomial, leading_coeff_in_subring

__all__ = [
    "PseudoPrimaryData",
    "PrimaryEvidence",
    "NonPrimaryWitness",
    "NotApplicable",
    "WITNESS_LIMIT",
    "detect_pseudo_primary",
    "saturating_polynomial",
    "is_primary_pseudo",
    "find_non_primary_witness",
    "check_witness",
]

log = logging.getLogger(__name__)

WITNESS_LIMIT = 10_000


class NotApplicable(ValueError):
    """The ideal does not have a prime radical generated by variables."""


@dataclass(frozen=True)
class PseudoPrimaryData:
    ideal: Ideal
    radical_vars: tuple[str, ...]
    independent: tuple[str, ...]

    @property
    def radical(self) -> Ideal:
        R = self.ideal.ring
        return Ideal([R.gen(v) for v in self.radical_vars], R)


def _in_variable_ideal(p: Polynomial, idx: set[int]) -> bool:
    return all(any(e[i] for i in idx) for e in p._terms)


def detect_pseudo_primary(I: Ideal) -> PseudoPrimaryData | None:
    """Radical data when sqrt(I) is generated by variables, else None."""
    if I.is_zero() or I.is_unit():
        return None
    R = I.ring
    V = [v for v in R.variables if radical_member(R.gen(v), I)]
    idx = {R.index(v) for v in V}
    if not V or not all(_in_variable_ideal(g, idx) for g in I.gens):
        return None
    U = tuple(v for v in R.variables if v not in V)
    return PseudoPrimaryData(I, tuple(V), U)


def _monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def saturating_polynomial(I: Ideal, U: Iterable[str]) -> Polynomial:
    """lcm of the k[U]-leading coefficients of the block Gröbner basis.

    Monomial parts combine by componentwise max; distinct non-monomial
    cofactors are multiplied, which may over-saturate but never misses the
    primary component.
    """
    U = frozenset(U)
    R = I.ring
    order = Block(U)
    G = I.groebner(order)
    mono = (0,) * R.nvars
    extra: list[Polynomial] = []
    for g in G:
        lc = leading_coeff_in_subring(g, U, order)
        m = lc.content_monomial()
        mono = _monomial_lcm(mono, m)
        rest = lc.divide_monomial(m)
        if not rest.is_constant():
            rest = rest.monic(Lex())
            if rest not in extra:
                extra.append(rest)
    f = R.monomial(mono)
    for e in extra:
        f = f * e
    return f


@dataclass
class PrimaryEvidence:
    primary: bool
    data: PseudoPrimaryData
    saturating: Polynomial
    ideal_basis: GroebnerBasis
    saturation_basis: GroebnerBasis

    @property
    def extra(self) -> list[Polynomial]:
        """Saturation basis elements not in I (empty when primary)."""
        return [g for g in self.saturation_basis if not self.ideal_basis.contains(g)]

    def to_json(self) -> dict:
        return {
            "primary": self.primary,
            "radical": list(self.data.radical_vars),
            "independent": list(self.data.independent),
            "saturating_polynomial": str(self.saturating),
            "order": str(self.ideal_basis.order),
            "ideal_basis": [str(g) for g in self.ideal_basis],
            "saturation_basis": [str(g) for g in self.saturation_basis],
        }


def is_primary_pseudo(I: Ideal) -> PrimaryEvidence:
    """Decide primariness via I == I : f^inf; raises NotApplicable otherwise."""
    data = detect_pseudo_primary(I)
    if data is None:
        raise NotApplicable("radical is not a prime generated by variables")
    f = saturating_polynomial(I, data.independent)
    S = saturation(I, f)
    order = Block(data.independent)
    primary = ideal_equal(I, S)
    return PrimaryEvidence(primary, data, f, I.groebner(order), S.groebner(order))


@dataclass(frozen=True)
class NonPrimaryWitness:
    g: Polynomial
    h: Polynomial

    @property
    def product(self) -> Polynomial:
        return self.g * self.h

    def to_json(self) -> dict:
        return {"g": str(self.g), "h": str(self.h), "product": str(self.product)}


def check_witness(I: Ideal, g: Polynomial, h: Polynomial) -> bool:
    """gh in I, g not in I, h not in sqrt(I)."""
    return ideal_member(g * h, I) and not ideal_member(g, I) and not radical_member(h, I)


def _cofactor_splits(gens: Sequence[Polynomial]):
    for p in gens:
        m = p.content_monomial()
        rest = p.divide_monomial(m)
        if rest.is_constant() or not any(m):
            continue
        yield p.ring.monomial(m), rest


def _divisors_by_degree(m: tuple):
    divs = [d for d in itertools.product(*(range(k + 1) for k in m)) if any(d)]
    divs.sort(key=lambda d: (-sum(d), tuple(-x for x in d)))
    return divs


def _monomial_splits(gens: Sequence[Polynomial]):
    for p in gens:
        m = p.content_monomial()
        rest = p.divide_monomial(m)
        R = p.ring
        for d in _divisors_by_degree(m):
            if d == m and rest.is_constant():
                continue
            q = tuple(a - b for a, b in zip(m, d))
            yield R.monomial(q) * rest, R.monomial(d)


def find_non_primary_witness(
    I: Ideal,
    candidates: Iterable[tuple[Polynomial, Polynomial]] = (),
    limit: int = WITNESS_LIMIT,
) -> NonPrimaryWitness | None:
    """First (g, h) in a fixed enumeration with gh in I, g not in I, h not in sqrt(I).

    User candidates go first, then monomial-part times cofactor splits of
    each generator (given ones, then reduced basis elements), then monomial
    divisor splits.  At most ``limit`` pairs are examined.
    """
    radical_cache: dict[Polynomial, bool] = {}

    def outside_radical(h):
        if h not in radical_cache:
            radical_cache[h] = not radical_member(h, I)
        return radical_cache[h]

    # the reduced basis makes the search independent of how I is presented
    gens = list(I.gens) + [g for g in I.groebner() if g not in I.gens]
    sources = itertools.chain(candidates, _cofactor_splits(gens), _monomial_splits(gens))
    seen = set()
    for count, (g, h) in enumerate(sources):
        if count >= limit:
            log.info("witness search stopped after %d candidates", limit)
            break
        if (g, h) in seen or not g or not h:
            continue
        seen.add((g, h))
        if h.is_constant() or ideal_member(g, I):
            continue
        if not ideal_member(g * h, I):
            continue
        if outside_radical(h):
            return NonPrimaryWitness(g, h)
    return None
