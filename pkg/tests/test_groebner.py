import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from krullcheck.groebner import (
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_quotient,
    normal_form,
    radical_member,
    s_polynomial,
    saturation,
    saturation_by_elimination,
)
from krullcheck.parse import parse_poly, parse_ring
from krullcheck.poly import Grevlex, Lex

from conftest import from_sympy, polys, to_sympy

R3 = parse_ring("QQ[x,y,z]")
R2 = parse_ring("QQ[x,y]")
F2R = parse_ring("Fp(2)[x,y,z]")
X, Y, Z = sympy.symbols("x y z")


def P(s, R=R3):
    return parse_poly(s, R)


def ideal_of(*texts, R=R3):
    return Ideal([P(t, R) for t in texts], R)


def test_family_basis_is_already_reduced():
    I = ideal_of("x^3", "y^3", "x^2*y", "x^2*z - x*y^2")
    G = I.groebner(Lex())
    assert set(G) == {P("x^3"), P("y^3"), P("x^2*y"), P("x^2*z - x*y^2")}


def test_linear_basis():
    G = buchberger([P("x + y", R2), P("x - y", R2)])
    assert set(G) == {P("x", R2), P("y", R2)}


def test_unit_ideal():
    assert ideal_of("x", "x + 1").is_unit()


def test_membership_and_products():
    I = ideal_of("x^2", "y")
    assert ideal_member(P("x^3 + x*y*z"), I)
    assert not ideal_member(P("x"), I)
    assert ideal_equal(ideal_power(I, 2), ideal_product(I, I))
    assert ideal_power(I, 0).is_unit()


def test_quotient_and_saturation():
    A = ideal_of("x^2", "y^2", "x*y*z")
    assert ideal_equal(ideal_quotient(A, P("z")), ideal_of("x^2", "x*y", "y^2"))
    Ibar = ideal_of("x^3", "y^3", "x^2*y", "x^2*z", "x*y^2")
    S = saturation(Ibar, P("z"), cross_check=True)
    assert ideal_equal(S, ideal_of("x^2", "x*y^2", "y^3"))


def test_radical_membership():
    I = ideal_of("x^3", "y^3", "x^2*y", "x^2*z - x*y^2")
    assert radical_member(P("x"), I) and radical_member(P("y"), I)
    assert not radical_member(P("z"), I)


def test_elimination():
    I = ideal_of("x - y^2", "z - y^3")
    E = eliminate(I, ["y"])
    assert [str(g) for g in E.groebner()] == ["x^3 - z^2"]


def test_intersection_of_coordinate_ideals():
    assert ideal_equal(ideal_intersection(ideal_of("x"), ideal_of("y")), ideal_of("x*y"))


def test_ring_mismatch():
    with pytest.raises(ValueError):
        ideal_member(P("x", R2), ideal_of("x"))


# -- oracle comparisons against sympy -----------------------------------------------


ideal_gens = st.lists(polys(R3, max_terms=3, max_exp=2, coeff=3), min_size=1, max_size=3)


@settings(max_examples=60)
@given(ideal_gens, st.sampled_from(["lex", "grevlex"]))
def test_reduced_basis_matches_sympy(gens, order):
    o = Lex() if order == "lex" else Grevlex()
    G = buchberger(gens, o)
    want = sympy.groebner([to_sympy(g) for g in gens], X, Y, Z, order=order)
    assert set(G) == {from_sympy(e, R3).monic(o) for e in want.exprs}


# -- reduction invariants -------------------------------------------------------------


def _check_reduced(G, order):
    lms = [g.leading_monomial(order) for g in G]
    for i, g in enumerate(G):
        assert g.leading_coeff(order) == 1
        for j, m in enumerate(lms):
            if i != j:
                assert not any(all(a >= b for a, b in zip(e, m)) for e in g.terms)


@settings(max_examples=200)
@given(ideal_gens, st.sampled_from([Lex(), Grevlex()]))
def test_basis_invariants(gens, order):
    G = buchberger(gens, order)
    for g in gens:
        assert normal_form(g, G).is_zero()
    items = list(G)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            assert normal_form(s_polynomial(items[i], items[j], order), G).is_zero()
    _check_reduced(items, order)


@settings(max_examples=200)
@given(ideal_gens, polys(R3, max_terms=4, max_exp=3))
def test_normal_form_idempotent(gens, p):
    G = buchberger(gens, Grevlex())
    r = normal_form(p, G)
    assert normal_form(r, G) == r
    assert ideal_member(p - r, Ideal(gens))


@settings(max_examples=200)
@given(ideal_gens, st.lists(polys(R3, max_terms=2, max_exp=2, coeff=3), min_size=3, max_size=3))
def test_combinations_are_members(gens, cofactors):
    I = Ideal(gens)
    combo = sum((c * g for c, g in zip(cofactors, gens)), R3.zero)
    assert ideal_member(combo, I)


@settings(max_examples=40)
@given(st.lists(polys(F2R, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_prime_field_basis_invariants(gens):
    G = buchberger(gens, Grevlex())
    for g in gens:
        assert normal_form(g, G).is_zero()


def test_saturation_methods_agree_on_random_ideals():
    rng = random.Random(7)
    for _ in range(15):
        gens = [R3.monomial(tuple(rng.randint(0, 2) for _ in range(3))) for _ in range(3)]
        gens.append(P("x*y - z^2"))
        I = Ideal(gens)
        f = P(rng.choice(["x", "y", "z", "x*z"]))
        assert ideal_equal(saturation(I, f), saturation_by_elimination(I, f))
