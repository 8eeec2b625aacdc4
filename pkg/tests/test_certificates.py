import pytest

from errors import HypothesisFailed, NotInIdeal
from field.field import FiniteField
from freerla.expressions import Br, Gen, Pp
from freerla.freerla import build_algebra, parse_expr
from presentation.certificates import (
    bp_certificate,
    check_free_rank_formula,
    evaluate_rewrite,
    ideal_free_generators,
    largeness_certificate,
    rewrite_in_ideal_generators,
)
from presentation.presentation import Presentation

F2 = FiniteField(2)


@pytest.mark.parametrize(
    "n, m, p, q, k, generators, relations, difference",
    [
        (3, 1, 2, 0, 2, 6, 4, 2),
        (4, 2, 2, 0, 2, 9, 8, 1),
        (2, 0, 3, 0, 1, 2, 0, 2),
    ],
)
def test_largeness_counts(n, m, p, q, k, generators, relations, difference):
    cert = largeness_certificate(n, m, p, q)
    assert cert.k == k
    assert cert.generator_count == generators
    assert cert.relation_count == relations
    assert cert.difference == difference
    assert cert.recursion_ready == (difference >= 2)


def test_certificate_json_keys():
    data = largeness_certificate(3, 1, 2, 0).to_json()
    assert data == {
        "n": 3, "m": 1, "p": 2, "q": 0, "k": 2,
        "generatorCount": 6, "relationCount": 4, "difference": 2,
        "qMode": "supplied", "recursionReady": True,
    }


def test_certificate_needs_two_spare_generators():
    with pytest.raises(HypothesisFailed):
        largeness_certificate(3, 2, 2, 0)
    with pytest.raises(ValueError):
        largeness_certificate(3, 1, 2, -1)


@pytest.mark.parametrize("r, p, k, count", [(2, 2, 1, 3), (2, 2, 2, 5), (2, 3, 2, 10), (3, 2, 1, 5)])
def test_ideal_free_generator_count(r, p, k, count):
    generators = ideal_free_generators(r, p, k)
    assert len(generators) == count
    assert generators[-1].name == f"t^[{p**k}]"
    assert generators[-1].weight == p**k


def test_ideal_free_generators_reject_bad_arguments():
    with pytest.raises(ValueError):
        ideal_free_generators(1, 2, 1)
    with pytest.raises(ValueError):
        ideal_free_generators(2, 2, 0)


def test_free_rank_formula_in_truncation():
    report = check_free_rank_formula(2, 2, 1, 6)
    assert report["passed"]
    assert report["count"] == report["kukin"] == 3
    assert report["codimension"] == 1


def test_rewrite_single_commutator():
    A = build_algebra(F2, ("t", "a"), 4)
    w = parse_expr("(br t a)", A)
    result = rewrite_in_ideal_generators(A, "t", w)
    assert result.levels == (1,)
    assert result.q == 1
    assert evaluate_rewrite(A, "t", result.expression) == w


def test_rewrite_replaces_high_levels_with_restricted_power():
    A = build_algebra(F2, ("t", "a"), 4)
    w = parse_expr("(br t (br t a))", A)
    result = rewrite_in_ideal_generators(A, "t", w, k=1, ad_levels=(1,))
    assert result.q == 2
    assert result.expression == Br(Gen("s"), Gen("ad0.a"))
    assert evaluate_rewrite(A, "t", result.expression, k=1) == w
    assert 1 in result.ad_expressions


def test_rewrite_rejects_elements_outside_the_ideal():
    A = build_algebra(F2, ("t", "a"), 4)
    with pytest.raises(NotInIdeal):
        rewrite_in_ideal_generators(A, "t", A.generator("t"))


def test_certificate_for_presentation():
    P = Presentation(F2, ("x", "y", "z"), (Pp(Gen("x"), 1),))
    supplied = bp_certificate(P, q=0)
    assert supplied.q_mode == "supplied" and supplied.k == 2
    computed = bp_certificate(P)
    assert computed.q_mode == "computed"
    assert computed.q == 0
    assert computed.difference == 2


def test_certificate_for_presentation_with_too_many_relators():
    P = Presentation(F2, ("x", "y"), (Gen("x"),))
    with pytest.raises(HypothesisFailed):
        bp_certificate(P)
