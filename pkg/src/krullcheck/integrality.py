"""Element-wise membership in the integral closure of an ideal.

Three kinds of certificate are produced and replayed:

* ``equation``: an equation of integral dependence r^n + a_1 r^(n-1) + ... + a_n = 0
  with each a_i in I^i.  When a_i is built from products of generators the
  factorization is stored, so replay does not need a basis of I^i.
* ``determinantal``: I * K^n = K^(n+1) for K = I + <S> with r in S, i.e. I is
  a reduction of K and therefore K lies in the closure of I.
* ``newton``: convex weights placing an exponent vector in the Newton
  polyhedron of a monomial ideal.

Non-integrality is only ever reported for monomial data, where the Newton
polyhedron gives a sound refutation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .groebner import MEMBERSHIP_ORDER, Ideal, ideal_member, ideal_power, ideal_product, ideal_sum
from .monomial import MonomialIdeal, NewtonPolyhedron, newton_weights
from .poly import Polynomial, RingMismatchError

__all__ = [
    "IntegralityCertificate",
    "ClosureVerdict",
    "ClosureReport",
    "INTEGRAL",
    "NOT_INTEGRAL_MONOMIAL",
    "UNKNOWN",
    "DEFAULT_BUDGET",
    "is_integral_over",
    "verify_certificate",
    "closure_lower_bound",
    "newton_certificate",
    "determinantal_level",
]

log = logging.getLogger(__name__)

INTEGRAL = "integral"
NOT_INTEGRAL_MONOMIAL = "not-integral-monomial"
UNKNOWN = "unknown-within-budget"
DEFAULT_BUDGET = 4


@dataclass
class IntegralityCertificate:
    element: Polynomial
    ideal: Ideal
    kind: str  # "equation" | "determinantal" | "newton"
    # equation: coefficients a_1..a_n, optional factorizations
    #   a_i = sum(c * m * prod(gens[j] for j in idx)) as (c*m, idx) pairs
    coefficients: list[Polynomial] = field(default_factory=list)
    factorizations: dict[int, list[tuple[Polynomial, tuple[int, ...]]]] = field(default_factory=dict)
    # determinantal
    level: int = 0
    companions: list[Polynomial] = field(default_factory=list)
    # newton
    exponent: tuple[int, ...] = ()
    generators: tuple[tuple[int, ...], ...] = ()
    weights: dict[int, Fraction] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "ring": _ring_text(self.element),
            "element": str(self.element),
            "ideal": [str(g) for g in self.ideal.gens],
        }
        if self.kind == "equation":
            out["degree"] = self.degree
            out["coefficients"] = [str(a) for a in self.coefficients]
            out["factorizations"] = {
                str(i): [{"cofactor": str(c), "generators": list(idx)} for c, idx in terms]
                for i, terms in sorted(self.factorizations.items())
            }
        elif self.kind == "determinantal":
            out["level"] = self.level
            out["companions"] = [str(s) for s in self.companions]
        else:
            out["exponent"] = list(self.exponent)
            out["generators"] = [list(g) for g in self.generators]
            out["weights"] = {str(i): str(w) for i, w in sorted(self.weights.items())}
        return out


def _ring_text(p: Polynomial) -> str:
    from .parse import format_ring

    return format_ring(p.ring)


@dataclass
class ClosureVerdict:
    status: str
    certificate: IntegralityCertificate | None = None
    budget_used: int = 0
    note: str = ""

    @property
    def integral(self) -> bool:
        return self.status == INTEGRAL

    def to_json(self) -> dict:
        out = {"status": self.status, "budget_used": self.budget_used}
        if self.note:
            out["note"] = self.note
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def newton_certificate(r: Polynomial, M: MonomialIdeal) -> IntegralityCertificate | None:
    """NewtonPoint certificate for a monomial r over a monomial ideal, if any."""
    if not r.is_monomial():
        raise ValueError("newton certificates need a monomial element")
    v = next(iter(r._terms))
    lam = newton_weights(v, NewtonPolyhedron.of(M))
    if lam is None:
        return None
    return IntegralityCertificate(
        element=r, ideal=M.to_ideal(), kind="newton", exponent=v, generators=M.gens, weights=lam
    )


def _monomial_equation(r: Polynomial, I: Ideal, sub_idx: list[int]) -> IntegralityCertificate | None:
    """Equation r^D - r^D = 0 where r^D is divisible by a product of D generators.

    The degree D is the common denominator of the Newton weights."""
    gens = [next(iter(I.gens[i]._terms)) for i in sub_idx]
    v = next(iter(r._terms))
    lam = newton_weights(v, gens)
    if lam is None:
        return None
    D = 1
    for w in lam.values():
        D = lcm(D, w.denominator)
    idx: list[int] = []
    used = [0] * len(v)
    for k, w in sorted(lam.items()):
        mult = int(w * D)
        idx.extend([sub_idx[k]] * mult)
        for j in range(len(v)):
            used[j] += mult * gens[k][j]
    R = r.ring
    rD = r**D
    cof_exp = tuple(D * v[j] - used[j] for j in range(len(v)))
    coeff = -next(iter(rD._terms.values()))
    lead = [I.gens[i] for i in idx]
    for g in lead:
        coeff = coeff / next(iter(g._terms.values()))
    cofactor = R.monomial(cof_exp, coeff)
    coefficients = [R.zero] * (D - 1) + [-rD]
    return IntegralityCertificate(
        element=r,
        ideal=I,
        kind="equation",
        coefficients=coefficients,
        factorizations={D: [(cofactor, tuple(idx))]},
    )


def _trivial_equation(r: Polynomial, I: Ideal) -> IntegralityCertificate:
    return IntegralityCertificate(element=r, ideal=I, kind="equation", coefficients=[-r])


def determinantal_level(I: Ideal, companions: Sequence[Polynomial], budget: int) -> int | None:
    """Least n <= budget with I*K^n = K^(n+1), K = I + <companions>; else None."""
    K = ideal_sum(I, Ideal(list(companions), I.ring))
    Kn = Ideal([I.ring.one], I.ring)
    for n in range(1, budget + 1):
        Kn = ideal_product(Kn, K)
        if _reduction_holds(I, K, Kn):
            return n
    return None


def _reduction_holds(I: Ideal, K: Ideal, Kn: Ideal) -> bool:
    M = ideal_product(I, Kn)
    G = M.groebner(MEMBERSHIP_ORDER)
    # I*K^n is always inside K^(n+1); check the other inclusion on generators
    return all(G.contains(f * g) for f in Kn.gens for g in K.gens)


def is_integral_over(
    r: Polynomial,
    I: Ideal,
    budget: int = DEFAULT_BUDGET,
    companions: Sequence[Polynomial] = (),
) -> ClosureVerdict:
    """Decide (soundly, within budget) whether r lies in the integral closure of I.

    ``companions`` are further candidates tested jointly with r when the
    single-element determinantal test fails within the budget.
    """
    if r.ring != I.ring:
        raise RingMismatchError(f"{r.ring} vs {I.ring}")
    if not r:
        raise ValueError("element must be nonzero")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if ideal_member(r, I):
        return ClosureVerdict(INTEGRAL, _trivial_equation(r, I), 0)
    if r.is_monomial():
        sub_idx = [i for i, g in enumerate(I.gens) if g.is_monomial()]
        if sub_idx:
            cert = _monomial_equation(r, I, sub_idx)
            if cert is not None:
                return ClosureVerdict(INTEGRAL, cert, 0)
        if I.is_monomial():
            return ClosureVerdict(NOT_INTEGRAL_MONOMIAL, None, 0, note="outside the Newton polyhedron")
    level = determinantal_level(I, [r], budget)
    if level is not None:
        cert = IntegralityCertificate(element=r, ideal=I, kind="determinantal", level=level, companions=[r])
        return ClosureVerdict(INTEGRAL, cert, level)
    others = [c for c in companions if c != r]
    if others:
        level = determinantal_level(I, [r] + others, budget)
        if level is not None:
            cert = IntegralityCertificate(
                element=r, ideal=I, kind="determinantal", level=level, companions=[r] + others
            )
            return ClosureVerdict(INTEGRAL, cert, level)
    return ClosureVerdict(UNKNOWN, None, budget)


def _expand_factorization(I: Ideal, terms) -> Polynomial:
    R = I.ring
    acc = R.zero
    for cof, idx in terms:
        prod = cof
        for j in idx:
            prod = prod * I.gens[j]
        acc = acc + prod
    return acc


def verify_certificate(c: IntegralityCertificate) -> bool:
    """Replay a certificate from scratch; False on any failed check."""
    try:
        return _verify(c)
    except (ValueError, IndexError, KeyError, RingMismatchError, ZeroDivisionError) as exc:
        log.debug("certificate replay raised %s", exc)
        return False


def _verify(c: IntegralityCertificate) -> bool:
    r, I = c.element, c.ideal
    if r.ring != I.ring:
        return False
    if c.kind == "equation":
        n = c.degree
        if n < 1:
            return False
        total = r**n
        for i, a in enumerate(c.coefficients, start=1):
            total = total + a * r ** (n - i)
        if total:
            return False
        for i, a in enumerate(c.coefficients, start=1):
            if not a:
                continue
            terms = c.factorizations.get(i)
            if terms is not None:
                if any(len(idx) != i for _, idx in terms):
                    return False
                if _expand_factorization(I, terms) != a:
                    return False
            elif not ideal_member(a, ideal_power(I, i)):
                return False
        return True
    if c.kind == "determinantal":
        if c.level < 1 or not c.companions:
            return False
        K = ideal_sum(I, Ideal(list(c.companions), I.ring))
        if not ideal_member(r, K):
            return False
        Kn = ideal_power(K, c.level)
        return _reduction_holds(I, K, Kn)
    if c.kind == "newton":
        gens, v, lam = c.generators, c.exponent, c.weights
        if not r.is_monomial() or next(iter(r._terms)) != tuple(v):
            return False
        if not all(g.is_monomial() for g in I.gens):
            return False
        ideal_exps = {next(iter(g._terms)) for g in I.gens}
        if any(tuple(g) not in ideal_exps for g in gens):
            return False
        if not lam or any(w < 0 for w in lam.values()) or sum(lam.values()) != 1:
            return False
        point = [sum(lam.get(i, 0) * gens[i][j] for i in range(len(gens))) for j in range(len(v))]
        return all(p <= x for p, x in zip(point, v))
    return False


@dataclass
class ClosureReport:
    ideal: Ideal
    verdicts: dict[Polynomial, ClosureVerdict]

    @property
    def unknown(self) -> list[Polynomial]:
        return [p for p, v in self.verdicts.items() if v.status != INTEGRAL]


def closure_lower_bound(I: Ideal, candidates: Sequence[Polynomial], budget: int = DEFAULT_BUDGET) -> ClosureReport:
    """I plus every candidate proven integral over I.

    Cheap routes (membership, monomial equations) go first; the remaining
    candidates are tested jointly, K = I + <all of them>, then one at a time.
    """
    verdicts: dict[Polynomial, ClosureVerdict] = {}
    pending = []
    for r in candidates:
        if not r:
            raise ValueError("candidates must be nonzero")
        if ideal_member(r, I):
            verdicts[r] = ClosureVerdict(INTEGRAL, _trivial_equation(r, I), 0)
            continue
        if r.is_monomial():
            v = is_integral_over(r, I, budget=1) if I.is_monomial() else None
            if v is not None and v.status == NOT_INTEGRAL_MONOMIAL:
                verdicts[r] = v
                continue
            sub_idx = [i for i, g in enumerate(I.gens) if g.is_monomial()]
            cert = _monomial_equation(r, I, sub_idx) if sub_idx else None
            if cert is not None:
                verdicts[r] = ClosureVerdict(INTEGRAL, cert, 0)
                continue
        pending.append(r)
    if len(pending) > 1:
        level = determinantal_level(I, pending, budget)
        if level is not None:
            for r in pending:
                cert = IntegralityCertificate(
                    element=r, ideal=I, kind="determinantal", level=level, companions=list(pending)
                )
                verdicts[r] = ClosureVerdict(INTEGRAL, cert, level)
            pending = []
    for r in pending:
        verdicts[r] = is_integral_over(r, I, budget)
    proven = [r for r in candidates if verdicts[r].integral]
    bound = ideal_sum(I, Ideal(proven, I.ring)) if proven else I
    return ClosureReport(bound, verdicts)
