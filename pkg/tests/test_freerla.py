import random

import pytest

from errors import OwnerMismatch, ParseError, ResourceBound, UnknownGenerator
from field.field import FiniteField, parse_field
from freerla.expressions import Sc, Gen, format_tree, parse_tree, weight_bound
from freerla.freerla import (
    ad_power,
    basis_counts,
    build_algebra,
    enumerate_basis,
    format_expr,
    graded_dims,
    lyndon_counts,
    parse_expr,
    pmap,
    series_oracle_dims,
    substitute,
    weighted_graded_dims,
)

F2 = FiniteField(2)
F3 = FiniteField(3)


@pytest.mark.parametrize(
    "r, p, N, expected",
    [
        (2, 2, 6, [2, 3, 2, 6, 6, 11]),
        (3, 2, 3, [3, 6, 8]),
        (1, 2, 4, [1, 1, 0, 1]),
        (2, 3, 3, [2, 1, 4]),
    ],
)
def test_graded_dims(r, p, N, expected):
    assert graded_dims(r, p, N) == expected
    assert series_oracle_dims(r, p, N) == expected


@pytest.mark.parametrize("r, p", [(1, 3), (2, 5), (3, 3), (4, 2)])
def test_basis_counts_match_dims(r, p):
    N = 7
    counts = [0] * N
    for b in enumerate_basis(r, p, N):
        counts[b.weight - 1] += 1
    assert counts == graded_dims(r, p, N)


def test_weighted_dims_for_unit_weights_equal_free_dims():
    assert weighted_graded_dims([1, 1], 2, 6) == graded_dims(2, 2, 6)


def test_small_algebra_size():
    A = build_algebra(F2, ("x", "y"), 4)
    assert A.dim == 13
    A3 = build_algebra(F3, ("x", "y"), 3)
    assert A3.dim == 7


def test_cap_is_checked_before_allocation():
    with pytest.raises(ResourceBound):
        build_algebra(F2, ("x", "y", "z"), 8, cap=10)


def test_restricted_power_of_generator_brackets_like_double_ad():
    A = build_algebra(F2, ("x", "y"), 6)
    x, y = A.generator("x"), A.generator("y")
    assert pmap(x).bracket(y) == x.bracket(x.bracket(y))
    assert pmap(x).bracket(y) == ad_power(x, y, 2)


def test_jacobson_formula_for_sum_of_generators():
    A = build_algebra(F2, ("x", "y"), 6)
    value = parse_expr("(pp (sum x y) 1)", A)
    assert format_expr(value) == "(sum (pp x 1) (pp y 1) (br x y))"
    assert value.min_weight == 2
    assert not value.is_ordinary()


def test_bracket_is_alternating():
    A = build_algebra(F2, ("x", "y"), 4)
    assert parse_expr("(br x x)", A).is_zero()
    assert format_expr(A.zero()) == "(sc [0] x)"


def test_scalar_literals_over_gf4():
    F4 = parse_field("gf(4; 1,1,1)")
    tree = parse_tree("(sc [0,1] x)", F4, ("x", "y"))
    assert tree == Sc(2, Gen("x"))
    assert format_tree(tree, F4) == "(sc [0,1] x)"


def test_weight_overflow_truncates_to_zero():
    A = build_algebra(F2, ("x", "y"), 3)
    assert parse_expr("(pp x 2)", A).is_zero()
    assert weight_bound(parse_tree("(pp (br x y) 2)", F2), 2) == 8


@pytest.mark.parametrize("text", ["(br x)", "(pp x 0)", "(foo x y)", "(sum x y"])
def test_malformed_expressions(text):
    A = build_algebra(F2, ("x", "y"), 4)
    with pytest.raises(ParseError):
        parse_expr(text, A)


def test_unknown_generator():
    A = build_algebra(F2, ("x", "y"), 4)
    with pytest.raises(UnknownGenerator):
        parse_expr("(br x z)", A)


def test_elements_of_different_algebras_do_not_mix():
    A = build_algebra(F2, ("x", "y"), 4)
    B = build_algebra(F2, ("x", "y"), 5)
    with pytest.raises(OwnerMismatch):
        A.generator("x") + B.generator("x")


@pytest.mark.parametrize("field, N", [(F2, 8), (F3, 9)])
def test_main_identity_on_random_elements(field, N):
    A = build_algebra(field, ("x", "y"), N)
    rng = random.Random(17)
    for _ in range(20):
        g = A.random_element(rng, max_weight=N // field.p)
        h = A.random_element(rng)
        assert pmap(g).bracket(h) == ad_power(g, h, field.p)


def test_substitute_is_a_homomorphism():
    A = build_algebra(F2, ("x", "y"), 6)
    x, y = A.generator("x"), A.generator("y")
    images = {"x": x + y, "y": y}
    u = x.bracket(y)
    assert substitute(u, images) == (x + y).bracket(y)
    assert substitute(pmap(x), images) == pmap(x + y)


def test_lyndon_counts_and_derived_basis_counts():
    assert lyndon_counts(2, 6) == [2, 1, 2, 3, 6, 9]
    assert lyndon_counts(3, 0) == []
    lyndon = lyndon_counts(3, 9)
    for p in (2, 3, 5):
        for N in range(1, 10):
            assert basis_counts(lyndon, p, N) == graded_dims(3, p, N)


F4 = parse_field("gf(4; 1,1,1)")
F9 = parse_field("gf(9; 1,0,1)")


def test_restricted_power_is_frobenius_semilinear():
    A = build_algebra(F4, ("x", "y"), 6)
    rng = random.Random(23)
    for _ in range(20):
        u = A.random_element(rng, max_weight=3)
        c = F4.random_code(rng)
        assert pmap(u.scale(c)) == pmap(u).scale(F4.frob(c, 1))


@pytest.mark.parametrize("field, N", [(F4, 5), (F9, 5)])
def test_bracket_is_bilinear_and_satisfies_jacobi(field, N):
    A = build_algebra(field, ("x", "y"), N)
    rng = random.Random(29)
    for _ in range(15):
        u, v, w = (A.random_element(rng, density=0.4) for _ in range(3))
        c = field.random_code(rng)
        jacobi = u.bracket(v.bracket(w)) + v.bracket(w.bracket(u)) + w.bracket(u.bracket(v))
        assert jacobi.is_zero()
        assert (u.scale(c) + v).bracket(w) == u.bracket(w).scale(c) + v.bracket(w)
        assert u.bracket(v) == -v.bracket(u)


@pytest.mark.parametrize("field, N", [(F2, 6), (F3, 5), (F4, 4)])
def test_printed_elements_parse_back(field, N):
    A = build_algebra(field, ("x", "y"), N)
    rng = random.Random(31)
    for _ in range(15):
        u = A.random_element(rng, density=0.3)
        assert parse_expr(format_expr(u), A) == u
