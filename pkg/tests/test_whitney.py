from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krullcheck.parse import parse_fixture, parse_poly, parse_ring
from krullcheck.whitney import (
    FAILS_A,
    NOT_REFUTED,
    CurveFamily,
    DegenerateCurveError,
    HypersurfacePair,
    InvalidPairError,
    check_on_variety,
    curve_from_texts,
    jacobian_generators,
    limit_tangent,
    norm,
    refute_condition_a,
    valuation,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
R4 = parse_ring("QQ[x,y,z,t]")
E = parse_ring("QQ[c]/(2*c^3 - 1)[eps]")
K = E.field
F = parse_poly("x^6 + y^6 + x^4*z*t + z^3", R4)
PAIR = HypersurfacePair(F, ("x", "y", "z"), "t")
CURVE = curve_from_texts(E, [("x", "eps"), ("y", "0"), ("z", "c*eps^2"), ("t", "-3*c^2")])


def test_fixture_curve_matches():
    fx = parse_fixture((FIXTURES / "whitney_curve.txt").read_text())
    assert CurveFamily.from_mapping(fx.curves["p"]) == CURVE


def test_curve_lies_on_hypersurface():
    assert check_on_variety(PAIR, CURVE)
    assert check_on_variety(F, CURVE)
    base = CURVE.base_point()
    assert base["x"] == 0 and base["z"] == 0 and base["t"] == K.coerce(-3) * K.gen * K.gen


def test_limit_jacobian_and_verdict():
    tl = limit_tangent(PAIR, CURVE)
    assert tl.valuation == 6
    assert list(tl.jacobian) == [E.zero, E.zero, E.zero, parse_poly("c*eps^6", E)]
    assert tl.limit_normal == (K.zero, K.zero, K.zero, K.gen)
    assert tl.normalized == (K.zero, K.zero, K.zero, K.one)
    v = refute_condition_a(PAIR, CURVE)
    assert v.status == FAILS_A and v.pairing == K.gen
    assert v.replay()
    assert v.to_json()["jacobian"] == ["0", "0", "0", "c*eps^6"]


def test_pairing_nonzero_at_every_conjugate():
    # the norm is the product over the three embeddings of c
    assert norm(K.gen) == Fraction(1, 2)
    assert norm(K.zero) == 0


def test_curve_off_hypersurface_refutes_nothing():
    origin = curve_from_texts(E, [("x", "eps"), ("y", "0"), ("z", "c*eps^2"), ("t", "0")])
    assert not check_on_variety(PAIR, origin)
    assert refute_condition_a(PAIR, origin).status == NOT_REFUTED


def test_constant_curve_is_degenerate():
    const = curve_from_texts(E, [("x", "0"), ("y", "0"), ("z", "0"), ("t", "-3*c^2")])
    assert not check_on_variety(PAIR, const)
    with pytest.raises(DegenerateCurveError):
        limit_tangent(PAIR, const)


def test_invalid_pairs_rejected():
    R3 = parse_ring("QQ[x,y,z]")
    with pytest.raises(InvalidPairError):
        HypersurfacePair(parse_poly("x^2 + y^2 + z^2", R3), ("x", "y"), "z")
    with pytest.raises(InvalidPairError):
        HypersurfacePair(F, ("x", "y", "z"), "x")
    with pytest.raises(InvalidPairError):
        HypersurfacePair(parse_poly("x^2 + y^2 + z*t", R4), ("x", "y", "z"), "t")


def test_jacobian_generators_are_primitive():
    gens = jacobian_generators(F)
    expected = ["3*x^5 + 2*x^3*z*t", "y^5", "x^4*t + 3*z^2", "x^4*z"]
    assert gens == [parse_poly(s, R4) for s in expected]


def test_valuation():
    assert valuation(parse_poly("eps^3 + 2*eps^5", E)) == 3
    assert valuation(E.zero) is None


ext_scalars = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=7)] * 3).filter(any)


@settings(max_examples=60)
@given(ext_scalars)
def test_verdict_invariant_under_rescaling(coords):
    lam = K.from_coords(list(coords))
    curve = CURVE.rescale(lam)
    v = refute_condition_a(PAIR, curve)
    assert v.status == FAILS_A and v.replay()
    tl = v.tangent
    assert tl.valuation == 6
    ref = limit_tangent(PAIR, CURVE)
    # projectively equal limit normals
    assert tl.normalized == ref.normalized
    assert norm(v.pairing) != 0


@settings(max_examples=60)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool), st.integers(1, 3))
def test_rational_rescaling_of_rational_curve(lam, k):
    # Whitney umbrella along the t-axis; the limit normal (-2, 2, 0) is orthogonal to d/dt
    R = parse_ring("QQ[x,y,t]")
    Q = parse_ring("QQ[eps]")
    pair = HypersurfacePair(parse_poly("y^2 - x^2*t", R), ("x", "y"), "t")
    curve = curve_from_texts(Q, [("x", f"eps^{k}"), ("y", f"eps^{k}"), ("t", "1")])
    base = refute_condition_a(pair, curve)
    scaled = refute_condition_a(pair, curve.rescale(lam))
    assert base.status == scaled.status == NOT_REFUTED
    assert base.tangent.normalized == scaled.tangent.normalized
