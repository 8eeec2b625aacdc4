import random

import numpy as np
import pytest

from errors import DivisionByZero, FieldError, FieldMismatch, ParseError
from field.field import FiniteField, field_arith, frobenius, parse_field


@pytest.fixture
def f4():
    return parse_field("gf(4; 1,1,1)")


def test_prime_field_addition_wraps():
    F = parse_field("gf(2)")
    assert F.add(1, 1) == 0
    assert F.literal == "gf(2)"


def test_gf4_multiplication_and_frobenius(f4):
    a = f4.element([0, 1])
    assert a * a == a + f4.one
    assert frobenius(a, 1) == a + f4.one
    assert frobenius(a, -1) == a + f4.one
    assert frobenius(a, 2) == a


def test_gf9_square_of_root_is_minus_one():
    F = parse_field("gf(9; 1,0,1)")
    a = F.element([0, 1])
    assert (a * a).code == 2
    assert F.literal == "gf(9; 1,0,1)"


def test_alternative_literal_with_exponent():
    assert parse_field("gf(3^2; 1,0,1)") == parse_field("gf(9; 1,0,1)")


@pytest.mark.parametrize("text", ["gf(4; 1,0,1)", "gf(6)", "gf(4)", "gf(9; 1,1)"])
def test_invalid_fields_are_rejected(text):
    with pytest.raises(FieldError):
        parse_field(text)


def test_malformed_literal_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_field("GF 2")


def test_division_by_zero(f4):
    with pytest.raises(DivisionByZero):
        field_arith(f4.one, f4.zero, "div")


def test_mixing_fields_raises(f4):
    with pytest.raises(FieldMismatch):
        field_arith(f4.one, parse_field("gf(2)").one, "add")


@pytest.mark.parametrize("literal", ["gf(2)", "gf(3)", "gf(4; 1,1,1)", "gf(9; 1,0,1)", "gf(8; 1,1,0,1)"])
def test_field_axioms_on_random_triples(literal):
    F = parse_field(literal)
    rng = random.Random(3)
    for _ in range(100):
        a, b, c = (F.random_code(rng) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        assert F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1))
        assert F.frob(F.frob(a, 1), -1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_vector_operations_match_scalar_ones(f4):
    u = np.array([0, 1, 2, 3], dtype=np.int64)
    v = np.array([3, 3, 1, 0], dtype=np.int64)
    assert list(f4.vadd(u, v)) == [f4.add(a, b) for a, b in zip(u, v)]
    assert list(f4.vscale(2, u)) == [f4.mul(2, a) for a in u]
    assert list(f4.vaxpy(u, 3, v)) == [f4.add(a, f4.mul(3, b)) for a, b in zip(u, v)]


def test_element_literals(f4):
    assert f4.parse_element("[1,1]") == 3
    assert f4.format_code(3) == "[1,1]"
    assert FiniteField(5).parse_element("7") == 2


@pytest.mark.parametrize(
    "literal",
    [
        "gf(4; 1,1,1)",
        "gf(8; 1,1,0,1)",
        "gf(9; 1,0,1)",
        "gf(25; 2,0,1)",
        "gf(27; 1,2,0,1)",
        "gf(256; 1,1,0,1,1,0,0,0,1)",
    ],
)
def test_frobenius_inverse_round_trip_on_all_elements(literal):
    F = parse_field(literal)
    for a in range(F.order):
        assert F.frob(F.frob(a, 1), -1) == a
        assert F.frob(F.frob(a, -1), 1) == a
        assert F.frob(a, F.k) == a
        assert F.frob(a, 1) == F.power(a, F.p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_frobenius_is_identity_on_prime_fields(p):
    F = FiniteField(p)
    for a in range(p):
        for n in (-2, -1, 0, 1, 3):
            assert F.frob(a, n) == a


@pytest.mark.parametrize("p", [2, 3, 5])
def test_inverse_accepts_numpy_integers(p):
    F = FiniteField(p)
    for a in range(1, p):
        b = F.inv(np.int64(a))
        assert F.mul(a, b) == 1
