import copy
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from krullcheck.groebner import Ideal, ideal_equal
from krullcheck.integrality import (
    INTEGRAL,
    NOT_INTEGRAL_MONOMIAL,
    UNKNOWN,
    closure_lower_bound,
    is_integral_over,
    newton_certificate,
    verify_certificate,
)
from krullcheck.monomial import MonomialIdeal, newton_member
from krullcheck.parse import parse_poly, parse_ring
from krullcheck.poly import RingMismatchError

from conftest import MIN_EXAMPLES, monomial_exps

R2 = parse_ring("QQ[x,y]")
R3 = parse_ring("QQ[x,y,z]")


def P(s, R=R3):
    return parse_poly(s, R)


def ideal_of(*texts, R=R3):
    return Ideal([P(t, R) for t in texts], R)


FAMILY = ideal_of("x^3", "y^3", "x^2*y", "x^2*z - x*y^2")


# -- examples ---------------------------------------------------------------


def test_mixed_monomial_has_cubic_equation():
    v = is_integral_over(P("x*y^2"), FAMILY)
    assert v.status == INTEGRAL
    c = v.certificate
    assert c.kind == "equation" and c.degree == 3
    # (xy^2)^3 = x^3 * y^3 * y^3
    assert c.coefficients[-1] == -P("x^3*y^6")
    assert verify_certificate(c)


def test_tampered_equation_is_rejected():
    c = is_integral_over(P("x*y^2"), FAMILY).certificate
    bad = copy.copy(c)
    bad.coefficients = c.coefficients[:-1] + [c.coefficients[-1] * FAMILY.ring.constant(2)]
    assert not verify_certificate(bad)
    bad = copy.copy(c)
    bad.factorizations = {3: [(P("-1"), (0, 1, 2))]}
    assert not verify_certificate(bad)


def test_non_monomial_data_never_refuted():
    v = is_integral_over(P("x^2"), FAMILY)
    assert v.status == UNKNOWN and v.certificate is None


def test_monomial_refutation():
    v = is_integral_over(P("x", R2), ideal_of("x^2", "y^2", R=R2))
    assert v.status == NOT_INTEGRAL_MONOMIAL


def test_newton_midpoint_certificate():
    M = MonomialIdeal(R2, [(2, 0), (0, 2)])
    c = newton_certificate(P("x*y", R2), M)
    assert c.weights == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert verify_certificate(c)
    assert newton_certificate(P("x", R2), M) is None
    with pytest.raises(ValueError):
        newton_certificate(P("x + y", R2), M)


def test_determinantal_certificate_for_binomial():
    v = is_integral_over(P("x^2 + x*y", R2), ideal_of("x^2", "y^2", R=R2))
    assert v.status == INTEGRAL and v.certificate.kind == "determinantal"
    assert verify_certificate(v.certificate)


def test_members_get_trivial_certificates():
    v = is_integral_over(P("x^3*z"), FAMILY)
    assert v.status == INTEGRAL and v.budget_used == 0 and verify_certificate(v.certificate)


def test_closure_lower_bound_of_family():
    rep = closure_lower_bound(FAMILY, [P("x*y^2")])
    assert rep.unknown == []
    assert ideal_equal(rep.ideal, ideal_of("x^3", "y^3", "x^2*y", "x^2*z", "x*y^2"))
    assert closure_lower_bound(FAMILY, []).ideal is FAMILY


def test_bad_arguments():
    with pytest.raises(ValueError):
        is_integral_over(R3.zero, FAMILY)
    with pytest.raises(ValueError):
        is_integral_over(P("x"), FAMILY, budget=0)
    with pytest.raises(RingMismatchError):
        is_integral_over(P("x", R2), FAMILY)
    with pytest.raises(ValueError):
        closure_lower_bound(FAMILY, [R3.zero])


# -- properties -------------------------------------------------------------

mono_case = st.integers(2, 3).flatmap(
    lambda n: st.tuples(st.just(n), monomial_exps(n, max_exp=4), st.tuples(*[st.integers(0, 4)] * n))
)


def ring_for(n):
    return R2 if n == 2 else R3


@settings(max_examples=MIN_EXAMPLES)
@given(mono_case)
def test_monomial_verdicts_agree_with_newton(data):
    n, gens, v = data
    assume(any(v))
    R = ring_for(n)
    M = MonomialIdeal(R, gens)
    verdict = is_integral_over(R.monomial(v), M.to_ideal())
    if newton_member(v, M):
        assert verdict.status == INTEGRAL
        assert verify_certificate(verdict.certificate)
    else:
        assert verdict.status == NOT_INTEGRAL_MONOMIAL


def _tamper(cert, how, outsider):
    bad = copy.copy(cert)
    if how == "element":
        bad.element = outsider
        bad.exponent = next(iter(outsider._terms))
    elif how == "coefficient":
        k = max(i for i, a in enumerate(cert.coefficients) if a)
        coeffs = list(cert.coefficients)
        coeffs[k] = coeffs[k] * outsider.ring.constant(3)
        bad.coefficients = coeffs
    elif how == "weights":
        w = dict(cert.weights)
        i = next(iter(w))
        w[i] = w[i] + Fraction(1, 7)
        bad.weights = w
    return bad


@settings(max_examples=MIN_EXAMPLES)
@given(mono_case, st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), st.booleans())
def test_tampered_certificates_are_rejected(data, other, use_newton):
    n, gens, v = data
    R = ring_for(n)
    M = MonomialIdeal(R, gens)
    assume(any(v) and newton_member(v, M))
    w = other[:n]
    assume(not newton_member(w, M))
    r, outsider = R.monomial(v), R.monomial(w)
    if use_newton:
        cert = newton_certificate(r, M)
        hows = ["element", "weights"]
    else:
        cert = is_integral_over(r, M.to_ideal()).certificate
        hows = ["element", "coefficient"] if cert.kind == "equation" else ["element"]
    assert verify_certificate(cert)
    for how in hows:
        assert not verify_certificate(_tamper(cert, how, outsider)), how


binomial_case = st.tuples(
    st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3).filter(bool)
)


@settings(max_examples=30)
@given(binomial_case)
def test_budget_is_monotone(data):
    a, b, i, j, c = data
    I = Ideal([R2.monomial((a, 0)), R2.monomial((0, b))], R2)
    r = R2.monomial((i, j)) + R2.monomial((a, 0)) * R2.constant(c)
    assume(r and not r.is_monomial())
    verdicts = [is_integral_over(r, I, budget=k) for k in range(1, 5)]
    first = next((k for k, v in enumerate(verdicts) if v.status == INTEGRAL), None)
    if first is None:
        return
    ref = verdicts[first].certificate
    for v in verdicts[first:]:
        assert v.status == INTEGRAL
        assert v.certificate.kind == ref.kind and v.certificate.level == ref.level
        assert verify_certificate(v.certificate)
    # the binomial is integral exactly when its monomial part is
    assert newton_member((i, j), MonomialIdeal(R2, [(a, 0), (0, b)]))
