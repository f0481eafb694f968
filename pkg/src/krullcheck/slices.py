"""Real slices of g = x^6 + x^4*z*t + z^3 at fixed t = t0.

For fixed x != 0 the slice equation is the depressed cubic
z^3 + (t0*x^4) z + x^6, whose discriminant is -x^12 * (4*t0^3 + 27).  The
sign of 4*t0^3 + 27 therefore decides the number of real z-branches:
three when negative, two when zero, one when positive.

All root work is exact: Sturm sequences over the rationals, bisection to a
dyadic width, and interval endpoints printed with outward rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .fields import ExtElem, SimpleExtension

__all__ = [
    "SliceClassification",
    "SliceRow",
    "POSITIVE",
    "ZERO",
    "NEGATIVE",
    "WIDTH",
    "classify_slice",
    "slice_cubic",
    "real_roots",
    "count_real_roots",
    "count_roots_between",
    "emit_slice_samples",
    "write_tsv",
]

POSITIVE, ZERO, NEGATIVE = "positive", "zero", "negative"
WIDTH = Fraction(1, 2**40)
_BRANCHES = {POSITIVE: 1, ZERO: 2, NEGATIVE: 3}

# Univariate polynomials are lists of Fractions, lowest degree first.


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _rem(a, b):
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a = _trim(a[:-1])
    return a


def _divexact(a, b):
    a, b = _trim(a), _trim(b)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = q
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        a = _trim(a[:-1])
    return out


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _rem(a, b)
    return [c / a[-1] for c in a]


def _squarefree(p):
    g = _gcd(p, _deriv(p))
    return _divexact(p, g) if len(g) > 1 else _trim(p)


def _sturm(p) -> list:
    seq = [_trim(p), _deriv(p)]
    while _trim(seq[-1]):
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _changes_at(seq, x) -> int:
    return _sign_changes([_eval(s, x) for s in seq])


def _changes_at_infinity(seq, positive: bool) -> int:
    vals = []
    for s in seq:
        lead = s[-1]
        deg = len(s) - 1
        vals.append(lead if positive or deg % 2 == 0 else -lead)
    return _sign_changes(vals)


def _cauchy_bound(p) -> Fraction:
    """Power of two strictly above every |root|, so dyadic roots become bisection points."""
    p = _trim(p)
    bound = 1 + max((abs(c / p[-1]) for c in p[:-1]), default=Fraction(0))
    B = Fraction(1)
    while B <= bound:
        B *= 2
    return B


def count_real_roots(p: Sequence) -> int:
    """Number of distinct real roots."""
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return 0
    seq = _sturm(_squarefree(p))
    return _changes_at_infinity(seq, False) - _changes_at_infinity(seq, True)


def real_roots(p: Sequence, width: Fraction = WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals [lo, hi] of width <= ``width``, one per distinct real root, ascending."""
    p = _trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    q = _squarefree(p)
    seq = _sturm(q)
    B = _cauchy_bound(q)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B)]
    # isolate on half-open (a, b]; -B is never a root
    while stack:
        a, b = stack.pop()
        n = _changes_at(seq, a) - _changes_at(seq, b)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(q, a, b, width))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


def _refine(q, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink (a, b] holding one simple root of q."""
    vb = _eval(q, b)
    if vb == 0:
        return b, b
    # a may be a neighbouring root; just right of a the sign is opposite to q(b)
    sa = vb < 0
    while b - a > width:
        m = (a + b) / 2
        vm = _eval(q, m)
        if vm == 0:
            return m, m
        if (vm > 0) == sa:
            a = m
        else:
            b = m
    return a, b


@dataclass(frozen=True)
class SliceClassification:
    t0: object
    sign: str  # sign of 4*t0^3 + 27
    branches: int

    def to_json(self) -> dict:
        return {"t0": str(self.t0), "sign": self.sign, "branches": self.branches}


def _sign(v) -> str:
    return POSITIVE if v > 0 else NEGATIVE if v < 0 else ZERO


def _real_embedding_sign(e: ExtElem) -> str:
    """Sign of e at the unique real root of its field's modulus."""
    K: SimpleExtension = e.field
    m = [Fraction(c) for c in _base_coeffs(K.modulus)]
    q = _trim([Fraction(c) for c in _base_coeffs(e.coords)])
    if not q:
        return ZERO
    intervals = real_roots(m)
    if len(intervals) != 1:
        raise ValueError(f"{K} has {len(intervals)} real embeddings; the sign is ambiguous")
    a, b = intervals[0]
    if a == b:
        return _sign(_eval(q, a))
    # beta is the only root of m in (a, b]; a common root of q and m there means q(beta) = 0
    msf = _squarefree(m)
    g = _gcd(q, msf)
    if len(g) > 1 and count_roots_between(g, a, b):
        return ZERO
    while count_roots_between(q, a, b):
        mid = (a + b) / 2
        vm = _eval(msf, mid)
        if vm == 0:
            return _sign(_eval(q, mid))
        if (vm > 0) == (_eval(msf, a) > 0):
            a = mid
        else:
            b = mid
    return _sign(_eval(q, b))


def count_roots_between(p, a: Fraction, b: Fraction) -> int:
    """Distinct real roots of p in (a, b]."""
    seq = _sturm(_squarefree(_trim([Fraction(c) for c in p])))
    return _changes_at(seq, a) - _changes_at(seq, b)


def _base_coeffs(cs) -> list:
    out = []
    for c in cs:
        if hasattr(c, "numerator"):
            out.append(Fraction(int(c.numerator), int(c.denominator)))
        else:
            raise TypeError("slice classification needs a rational base field")
    return out


def classify_slice(t0) -> SliceClassification:
    """Real branch count of the slice t = t0 from the sign of 4*t0^3 + 27.

    ``t0`` is a rational (int, Fraction, decimal or fraction string) or an
    element of a simple extension of QQ with exactly one real embedding,
    e.g. the root of 4*b^3 + 27.
    """
    if isinstance(t0, ExtElem):
        s = _real_embedding_sign(t0 * t0 * t0 * 4 + 27)
    else:
        t = Fraction(t0) if not hasattr(t0, "numerator") else Fraction(int(t0.numerator), int(t0.denominator))
        s = _sign(4 * t**3 + 27)
    return SliceClassification(t0, s, _BRANCHES[s])


def slice_cubic(t0, x) -> list[Fraction]:
    """Coefficients of z^3 + t0*x^4*z + x^6, lowest degree first."""
    t0, x = Fraction(t0), Fraction(x)
    return [x**6, t0 * x**4, Fraction(0), Fraction(1)]


@dataclass(frozen=True)
class SliceRow:
    x: Fraction
    branch: int
    z_lo: Fraction
    z_hi: Fraction


def emit_slice_samples(t0, x_min, x_max, step, width: Fraction = WIDTH) -> Iterator[SliceRow]:
    """Real z-roots of the slice cubic at x = x_min, x_min + step, ... <= x_max.

    Branches are numbered 0, 1, ... by increasing z at each x.
    """
    t0, x_min, x_max, step = (Fraction(v) for v in (t0, x_min, x_max, step))
    if step <= 0:
        raise ValueError("step must be positive")
    if x_max < x_min:
        raise ValueError("empty x-range")
    k = 0
    while x_min + k * step <= x_max:
        x = x_min + k * step
        for i, (lo, hi) in enumerate(real_roots(slice_cubic(t0, x), width)):
            yield SliceRow(x, i, lo, hi)
        k += 1


def _decimal(q: Fraction, digits: int, rounding) -> str:
    scaled = rounding(q * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    text = f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0", "-") else text


def write_tsv(rows, stream, digits: int = 15) -> None:
    """TSV with outward-rounded decimal endpoints."""
    stream.write("x\tbranch\tz_lo\tz_hi\n")
    for r in rows:
        x = _decimal(r.x, digits, round)
        stream.write(
            f"{x}\t{r.branch}\t{_decimal(r.z_lo, digits, math.floor)}\t{_decimal(r.z_hi, digits, math.ceil)}\n"
        )
