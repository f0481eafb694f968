import random
from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from krullcheck.fields import (
    QQ,
    ExtElem,
    IncompatibleFieldError,
    PrimeField,
    SimpleExtension,
    extension_embed,
    field_add,
    field_inv,
)
from krullcheck.parse import parse_field


def test_rational_arithmetic():
    assert QQ(1) / 2 + QQ(1) / 3 == mpq(5, 6)
    assert QQ.coerce(Fraction(3, 4)) == mpq(3, 4)


def test_prime_field_basics():
    F2 = PrimeField(2)
    assert F2(1) + F2(1) == F2.zero
    F5 = PrimeField(5)
    assert F5(2) * F5(3) == F5(1)
    assert F5(2).inverse() == F5(3)
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ZeroDivisionError):
        F5(0).inverse()


def test_extension_cube_root_of_half():
    K = parse_field("QQ[c]/(2*c^3 - 1)")
    c = K.gen
    assert c * c**2 == K(mpq(1, 2))
    xi = -3 * c**2
    assert xi**3 == K(mpq(-27, 4))
    assert 4 * xi**3 + 27 == K.zero


def test_extension_rejects_reducible_low_degree():
    with pytest.raises(ValueError):
        parse_field("QQ[c]/(c^2 - 4)")
    with pytest.raises(ValueError):
        parse_field("Fp(5)[c]/(c^2 - 4)")


def test_mixed_fields_raise():
    F5, F7 = PrimeField(5), PrimeField(7)
    with pytest.raises(IncompatibleFieldError):
        field_add(F5(1), F7(1))
    K = parse_field("QQ[c]/(2*c^3 - 1)")
    L = parse_field("QQ[b]/(4*b^3 + 27)")
    with pytest.raises(IncompatibleFieldError):
        K.gen + L.gen


def test_embed_base_into_extension():
    K = parse_field("QQ[c]/(2*c^3 - 1)")
    e = extension_embed(mpq(2, 3), K)
    assert isinstance(e, ExtElem) and e.is_base()


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7, 101]))
def test_prime_field_matches_integer_mod(a, b, p):
    F = PrimeField(p)
    assert (F(a) * F(b)).v == a * b % p
    assert (F(a) - F(b)).v == (a - b) % p
    if a % p:
        assert (F(a) * field_inv(F(a))).v == 1


@settings(max_examples=200)
@given(st.integers(0, 2**32))
def test_extension_inverse_against_sympy(seed):
    rng = random.Random(seed)
    K = parse_field("QQ[c]/(2*c^3 - 1)")
    a = K.random_element(rng)
    if a == K.zero:
        return
    inv = field_inv(a)
    assert a * inv == K.one
    # oracle: invert the coordinate polynomial modulo the minimal polynomial
    c = sympy.Symbol("c")
    pa = sum(sympy.Rational(int(x.numerator), int(x.denominator)) * c**i for i, x in enumerate(a.coords))
    want = sympy.invert(pa, 2 * c**3 - 1, c)
    got = sum(sympy.Rational(int(x.numerator), int(x.denominator)) * c**i for i, x in enumerate(inv.coords))
    assert sympy.expand(sympy.rem(want - got, 2 * c**3 - 1, c)) == 0


def test_extension_over_prime_field():
    K = SimpleExtension(PrimeField(2), [1, 1, 1], name="w")  # w^2 + w + 1
    w = K.gen
    assert w**3 == K.one
    assert w * w + w + 1 == K.zero
