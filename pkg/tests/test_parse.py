import pytest
from hypothesis import given, settings

from krullcheck.parse import (
    ParseError,
    format_field,
    format_ring,
    parse_field,
    parse_fixture,
    parse_poly,
    parse_ring,
    print_poly,
)

from conftest import polys

R3 = parse_ring("QQ[x,y,z]")
F5R = parse_ring("Fp(5)[x,y,z]")
KR = parse_ring("QQ[c]/(2*c^3 - 1)[eps]")


def test_print_is_descending_lex():
    p = parse_poly("z + 3*x*y - 1/2 + x^2", R3)
    assert print_poly(p) == "x^2 + 3*x*y + z - 1/2"


def test_extension_coefficients_print_in_parentheses():
    p = parse_poly("(c + 1)*eps^2 - c^2*eps", KR)
    assert str(p) == "(c + 1)*eps^2 - c^2*eps"
    assert parse_poly(str(p), KR) == p


def test_field_and_ring_formatting():
    assert format_ring(parse_ring("QQ[c]/(2*c^3-1)[eps]")) == "QQ[c]/(c^3 - 1/2)[eps]"
    assert format_field(parse_field("Fp(7)")) == "Fp(7)"


@pytest.mark.parametrize(
    "text, message",
    [
        ("x^-1", "exponent must be a non-negative integer"),
        ("x + w", "unknown"),
        ("x / y", "constant"),
        ("(x + y", "expected"),
        ("x + * y", "expected"),
    ],
)
def test_parse_errors_carry_a_span(text, message):
    with pytest.raises(ParseError) as err:
        parse_poly(text, R3)
    assert message in str(err.value)
    assert err.value.span.begin <= len(text)


def test_duplicate_variables_rejected():
    with pytest.raises(ParseError):
        parse_ring("QQ[x,y,x]")


def test_division_by_constant():
    assert parse_poly("3/4*x", R3) == parse_poly("x*3/4", R3)
    with pytest.raises(ParseError):
        parse_poly("x/0", R3)


def test_fixture_file():
    fx = parse_fixture(
        """
        # comment
        ring: QQ[x,y]
        ideal I = [x^2; y^2]
        poly r = x*y
        """
    )
    assert [str(g) for g in fx.ideals["I"]] == ["x^2", "y^2"]
    assert str(fx.polys["r"]) == "x*y"


@settings(max_examples=200)
@given(polys(R3, max_terms=5, coeff=9))
def test_round_trip_rational(p):
    assert parse_poly(print_poly(p), R3) == p


@settings(max_examples=200)
@given(polys(F5R, max_terms=5, coeff=9))
def test_round_trip_prime_field(p):
    assert parse_poly(print_poly(p), F5R) == p


def test_round_trip_through_arithmetic():
    p = parse_poly("(x - y)^3 * (1/3*z + 2)", R3)
    assert parse_poly(str(p), R3) == p
