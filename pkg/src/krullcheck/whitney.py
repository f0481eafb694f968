"""Refuting Whitney condition (a) with a polynomial witness curve.

A hypersurface V(f) has a stratum given by setting some locus variables to
zero, with one free direction variable.  A curve p(eps) of smooth points of
V(f) that tends to the stratum carries normals grad f(p(eps)); after
dividing by the lowest power of eps they converge to a limit normal.  When
that normal pairs nonzero with the direction variable, the limit tangent
hyperplane does not contain the stratum and condition (a) fails.

Curves are polynomial in one parameter and may have coefficients in a
simple algebraic extension, so one exact computation covers every
conjugate point at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .fields import IncompatibleFieldError
from .poly import PolyRing, Polynomial, RingMismatchError, partial_derivative, substitute

__all__ = [
    "HypersurfacePair",
    "CurveFamily",
    "TangentLimit",
    "WhitneyVerdict",
    "DegenerateCurveError",
    "InvalidPairError",
    "FAILS_A",
    "NOT_REFUTED",
    "check_on_variety",
    "limit_tangent",
    "refute_condition_a",
    "valuation",
    "curve_from_texts",
    "jacobian_generators",
    "norm",
]

FAILS_A = "FAILS_A"
NOT_REFUTED = "NOT_REFUTED"


class DegenerateCurveError(ValueError):
    """The gradient vanishes identically along the curve."""


class InvalidPairError(ValueError):
    pass


def _gradient(f: Polynomial) -> list[Polynomial]:
    return [partial_derivative(f, v) for v in f.ring.variables]


@dataclass(frozen=True)
class HypersurfacePair:
    """V(f) together with the stratum {locus variables = 0}."""

    f: Polynomial
    locus: tuple[str, ...]
    direction: str

    def __post_init__(self):
        R = self.f.ring
        object.__setattr__(self, "locus", tuple(self.locus))
        for v in self.locus + (self.direction,):
            R.index(v)
        if self.direction in self.locus:
            raise InvalidPairError("the direction variable must not vanish on the stratum")
        zero = {v: R.zero if v in self.locus else R.gen(v) for v in R.variables}
        if substitute(self.f, zero, R):
            raise InvalidPairError("f does not vanish on the stratum")
        for d in _gradient(self.f):
            if substitute(d, zero, R):
                raise InvalidPairError("the stratum is not inside the singular locus of f")


@dataclass(frozen=True)
class CurveFamily:
    """One polynomial in a single parameter per ambient variable."""

    ring: PolyRing  # univariate parameter ring
    coordinates: tuple[tuple[str, Polynomial], ...]

    @classmethod
    def from_mapping(cls, coords: Mapping[str, Polynomial], ring: PolyRing | None = None) -> "CurveFamily":
        items = list(coords.items())
        if not items:
            raise ValueError("empty curve")
        ring = ring or items[0][1].ring
        if ring.nvars != 1:
            raise ValueError(f"curves need a single parameter, got {ring}")
        return cls(ring, tuple((v, ring(p)) for v, p in items))

    @property
    def parameter(self) -> str:
        return self.ring.variables[0]

    def as_dict(self) -> dict[str, Polynomial]:
        return dict(self.coordinates)

    def base_point(self) -> dict[str, object]:
        return {v: p.constant_coeff() for v, p in self.coordinates}

    def rescale(self, lam) -> "CurveFamily":
        """Reparametrize eps -> lam * eps."""
        e = self.ring.gen(self.parameter) * self.ring.constant(lam)
        return CurveFamily(self.ring, tuple((v, substitute(p, {self.parameter: e}, self.ring)) for v, p in self.coordinates))


def valuation(p: Polynomial) -> int | None:
    """Lowest power of the parameter in p; None for zero."""
    if not p:
        return None
    return min(e[0] for e in p._terms)


def _along(f: Polynomial, curve: CurveFamily) -> Polynomial:
    coords = curve.as_dict()
    missing = set(f.ring.variables) - set(coords)
    if missing:
        raise RingMismatchError(f"curve has no coordinate for {sorted(missing)}")
    try:
        return substitute(f, coords, curve.ring)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, IncompatibleFieldError):
            raise
        raise IncompatibleFieldError(str(exc)) from exc


def _as_pair(obj) -> tuple[Polynomial, tuple[str, ...], str | None]:
    if isinstance(obj, HypersurfacePair):
        return obj.f, obj.locus, obj.direction
    return obj, (), None


def check_on_variety(pair: HypersurfacePair | Polynomial, curve: CurveFamily) -> bool:
    """f vanishes identically along the curve, and the curve leaves the stratum.

    Leaving means some locus coordinate is c * eps^k with c != 0, k >= 1, so
    p(eps) is off the stratum for every eps != 0.
    """
    f, locus, _ = _as_pair(pair)
    if _along(f, curve):
        return False
    if not locus:
        return True
    coords = curve.as_dict()
    return any(
        coords[v].is_monomial() and valuation(coords[v]) and coords[v].constant_coeff() == 0 for v in locus
    )


@dataclass(frozen=True)
class TangentLimit:
    jacobian: tuple[Polynomial, ...]
    valuation: int
    limit_normal: tuple
    normalized: tuple

    def to_json(self) -> dict:
        return {
            "jacobian": [str(p) for p in self.jacobian],
            "valuation": self.valuation,
            "limit_normal": [str(c) for c in self.limit_normal],
            "normalized": [str(c) for c in self.normalized],
        }


def limit_tangent(pair: HypersurfacePair | Polynomial, curve: CurveFamily) -> TangentLimit:
    f, _, _ = _as_pair(pair)
    jac = tuple(_along(d, curve) for d in _gradient(f))
    vals = [valuation(p) for p in jac if p]
    if not vals:
        raise DegenerateCurveError("the gradient of f vanishes identically along the curve")
    k = min(vals)
    F = curve.ring.field
    limit = tuple(p.coeff((k,)) if p else F.zero for p in jac)
    pivot = next(c for c in limit if c != F.zero)
    inv = F.one / pivot
    normalized = tuple(c * inv for c in limit)
    return TangentLimit(jac, k, limit, normalized)


@dataclass(frozen=True)
class WhitneyVerdict:
    status: str
    pair: HypersurfacePair
    curve: CurveFamily
    tangent: TangentLimit | None
    pairing: object = None
    reason: str = ""

    def replay(self) -> bool:
        """Recompute the Jacobian along the stored curve and compare."""
        if self.tangent is None:
            return self.status == NOT_REFUTED
        again = limit_tangent(self.pair, self.curve)
        if again != self.tangent:
            return False
        idx = self.pair.f.ring.index(self.pair.direction)
        return (again.limit_normal[idx] != self.curve.ring.field.zero) == (self.status == FAILS_A)

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "f": str(self.pair.f),
            "locus": list(self.pair.locus),
            "direction": self.pair.direction,
            "curve": {v: str(p) for v, p in self.curve.coordinates},
        }
        if self.tangent is not None:
            out.update(self.tangent.to_json())
            out["pairing"] = str(self.pairing)
        if self.reason:
            out["reason"] = self.reason
        return out


def refute_condition_a(pair: HypersurfacePair, curve: CurveFamily) -> WhitneyVerdict:
    """FAILS_A when the limit normal pairs nonzero with the stratum direction."""
    if not check_on_variety(pair, curve):
        return WhitneyVerdict(NOT_REFUTED, pair, curve, None, reason="curve is not on V(f) minus the stratum")
    tl = limit_tangent(pair, curve)
    idx = pair.f.ring.index(pair.direction)
    value = tl.limit_normal[idx]
    status = FAILS_A if value != curve.ring.field.zero else NOT_REFUTED
    return WhitneyVerdict(status, pair, curve, tl, value)


def curve_from_texts(ring: PolyRing, coords: Sequence[tuple[str, str]]) -> CurveFamily:
    from .parse import parse_poly

    return CurveFamily.from_mapping({v: parse_poly(t, ring) for v, t in coords}, ring)


def jacobian_generators(f: Polynomial) -> list[Polynomial]:
    """Nonzero partial derivatives, each scaled to a primitive form.

    Over QQ: integer coefficients with gcd 1 and positive leading
    coefficient (lex); over other fields: monic.
    """
    out = []
    for d in _gradient(f):
        if d:
            out.append(_primitive(d))
    return out


def _primitive(p: Polynomial) -> Polynomial:
    from fractions import Fraction

    from .fields import QQ

    if p.ring.field != QQ:
        return p.monic()
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in p._terms.values()]
    den = math.lcm(*(c.denominator for c in coeffs))
    num = math.gcd(*(int(c * den) for c in coeffs))
    scale = Fraction(den, num)
    if p.leading_coeff() < 0:
        scale = -scale
    return p * p.ring.constant(scale)


def norm(e) -> object:
    """Field norm of an extension element (determinant of multiplication by e).

    For an irreducible modulus the norm is the product of all conjugates of
    e, so a nonzero norm means e is nonzero at every embedding.
    """
    from fractions import Fraction

    from .fields import ExtElem

    if not isinstance(e, ExtElem):
        return e
    K = e.field
    cols = []
    basis = K.gen
    x = e
    for _ in range(K.degree):
        cols.append([Fraction(int(c.numerator), int(c.denominator)) for c in x.coords])
        x = x * basis
    M = [[cols[j][i] for j in range(K.degree)] for i in range(K.degree)]
    return _det(M)


def _det(M) -> object:
    from fractions import Fraction

    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            r = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= r * M[k][j]
    return det
