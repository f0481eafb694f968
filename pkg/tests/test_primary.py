import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krullcheck.groebner import Ideal, ideal_equal, ideal_member, radical_member, saturation
from krullcheck.monomial import MonomialIdeal, mono_is_primary
from krullcheck.parse import parse_poly, parse_ring
from krullcheck.primary import (
    NotApplicable,
    check_witness,
    detect_pseudo_primary,
    find_non_primary_witness,
    is_primary_pseudo,
    saturating_polynomial,
)

from conftest import monomial_exps

R3 = parse_ring("QQ[x,y,z]")
R4 = parse_ring("QQ[x,y,z,t]")


def family(n, R=R3):
    return Ideal([parse_poly(s, R) for s in ("x^3", "y^3", "x^2*y", f"x^2*z^{n} - x*y^2")], R)


def family_closure(n, R=R3):
    return Ideal([parse_poly(s, R) for s in ("x^3", "y^3", "x^2*y", f"x^2*z^{n}", "x*y^2")], R)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_is_primary(n):
    ev = is_primary_pseudo(family(n))
    assert ev.primary and ev.extra == []
    assert ev.data.radical_vars == ("x", "y") and ev.data.independent == ("z",)
    assert ev.saturating == parse_poly(f"z^{n}", R3)
    assert list(ev.ideal_basis) == list(ev.saturation_basis)


@pytest.mark.parametrize("n", [1, 2])
def test_family_closure_is_not_primary(n):
    Ibar = family_closure(n)
    ev = is_primary_pseudo(Ibar)
    assert not ev.primary
    assert any(ideal_member(parse_poly("x^2", R3), Ideal([g], R3)) for g in ev.extra)
    w = find_non_primary_witness(Ibar)
    assert (w.g, w.h) == (parse_poly("x^2", R3), parse_poly(f"z^{n}", R3))
    assert check_witness(Ibar, w.g, w.h)


def test_primary_ideal_has_no_witness():
    assert find_non_primary_witness(family(1)) is None


def test_witness_requirements():
    Ibar = family_closure(1)
    x2, z = parse_poly("x^2", R3), parse_poly("z", R3)
    assert check_witness(Ibar, x2, z)
    assert not check_witness(Ibar, z, x2)  # x^2 is in the radical
    assert not check_witness(Ibar, parse_poly("x^3", R3), z)  # g already in the ideal


def test_user_candidates_are_tried_first():
    Ibar = family_closure(1)
    g, h = parse_poly("x^2", R3), parse_poly("z^2", R3)
    w = find_non_primary_witness(Ibar, candidates=[(g, h)])
    assert (w.g, w.h) == (g, h)


def test_not_applicable_when_radical_not_variable_prime():
    I = Ideal([parse_poly("x*y", R3)], R3)
    assert detect_pseudo_primary(I) is None
    with pytest.raises(NotApplicable):
        is_primary_pseudo(I)


def test_saturating_polynomial_takes_monomial_lcm():
    I = Ideal([parse_poly(s, R3) for s in ("x^2", "x*z - y*z^2", "y^2")], R3)
    f = saturating_polynomial(I, ["z"])
    assert f.is_monomial()
    assert ideal_equal(saturation(I, f), saturation(I, parse_poly("z", R3)))


def test_jacobian_ideal_primary_and_closure_witness():
    J = Ideal([parse_poly(s, R4) for s in ("x^4*t + 3*z^2", "x^4*z", "y^5", "3*x^5 + 2*x^3*z*t")], R4)
    ev = is_primary_pseudo(J)
    assert ev.primary and ev.saturating == parse_poly("t^2", R4)
    assert ev.data.radical_vars == ("x", "y", "z")
    Jbar_sub = Ideal(list(J.gens) + [parse_poly("4*y^3*z*t^3 + 27*y^3*z", R4)], R4)
    g, h = parse_poly("y^3*z", R4), parse_poly("4*t^3 + 27", R4)
    assert check_witness(Jbar_sub, g, h)
    assert not radical_member(h, J)


# primary monomial ideals must be checked on ideals whose radical is generated by variables,
# i.e. those passing detect_pseudo_primary


@settings(max_examples=60)
@given(monomial_exps(3, max_exp=3, min_gens=1, max_gens=4))
def test_agrees_with_monomial_criterion(gens):
    M = MonomialIdeal(R3, gens)
    I = M.to_ideal()
    if detect_pseudo_primary(I) is None:
        assert not mono_is_primary(M)
        return
    assert is_primary_pseudo(I).primary == mono_is_primary(M)


@settings(max_examples=60)
@given(monomial_exps(3, max_exp=3, min_gens=2, max_gens=4))
def test_witnesses_replay(gens):
    I = MonomialIdeal(R3, gens).to_ideal()
    w = find_non_primary_witness(I)
    if w is not None:
        assert ideal_member(w.product, I)
        assert not ideal_member(w.g, I)
        assert not radical_member(w.h, I)
    elif detect_pseudo_primary(I) is not None:
        assert is_primary_pseudo(I).primary


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_saturation_evidence_when_primary(a, b, n):
    R = R3
    I = Ideal([parse_poly(s, R) for s in (f"x^{a + 1}", f"y^{b + 1}", f"x*z^{n} - y")], R)
    ev = is_primary_pseudo(I) if detect_pseudo_primary(I) else None
    if ev is not None and ev.primary:
        assert ideal_equal(saturation(I, ev.saturating), I)
        assert list(ev.ideal_basis) == list(ev.saturation_basis)
