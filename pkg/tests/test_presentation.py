import json
import random

import pytest

from errors import MalformedTransform, TooManyRelators, UnknownGenerator
from field.field import FiniteField, parse_field
from freerla.expressions import Br, Gen, Pp, Sc, Sum, format_tree
from presentation.presentation import (
    GenTransform,
    Presentation,
    abelianize,
    apply_transform,
    check_presentation_equivalence,
    normalize,
    relator_power_components,
    swap_generators,
)
from verification.verification import random_presentation

F2 = FiniteField(2)
F3 = FiniteField(3)


def _worked_example():
    relator = Sum((Pp(Gen("x"), 1), Pp(Gen("y"), 1), Br(Gen("x"), Gen("y"))))
    return Presentation(F2, ("x", "y"), (relator,))


def _rows(P):
    return abelianize(P).to_json()["rows"]


def test_abelianization_drops_brackets():
    assert _rows(_worked_example()) == [["[1]*t", "[1]*t"]]
    assert _rows(Presentation(F2, ("x", "y"), (Br(Gen("x"), Gen("y")),))) == [["0", "0"]]


def test_abelianization_keeps_scalars():
    F4 = parse_field("gf(4; 1,1,1)")
    P = Presentation(F4, ("x", "y"), (Sc(2, Gen("x")),))
    assert _rows(P) == [["[0,1]", "0"]]


def test_abelianization_without_relators_has_no_rows():
    M = abelianize(Presentation(F2, ("x", "y"), ()))
    assert M.rows == 0 and M.cols == 2


def test_normalize_worked_example():
    P = _worked_example()
    Q, omitted = normalize(P)
    assert relator_power_components(Q) == [{"x": "[1]*t"}]
    assert list(omitted) == ["y"]
    assert check_presentation_equivalence(P, Q, 4)
    assert Q.history


def test_normalize_rejects_too_many_relators():
    P = Presentation(F2, ("x", "y"), (Gen("x"), Gen("y")))
    with pytest.raises(TooManyRelators):
        normalize(P)


def test_normalize_three_generators_two_relators():
    relators = (
        Sum((Pp(Gen("x"), 1), Gen("z"))),
        Sum((Pp(Gen("y"), 1), Pp(Gen("z"), 1), Br(Gen("x"), Gen("y")))),
    )
    P = Presentation(F2, ("x", "y", "z"), relators)
    Q, omitted = normalize(P)
    components = relator_power_components(Q)
    assert len(omitted) == 1
    assert all(omitted[0] not in c for c in components)
    assert all(set(c) <= {Q.generators[i]} for i, c in enumerate(components))
    assert check_presentation_equivalence(P, Q, 4)


@pytest.mark.parametrize(
    "field, expected",
    [(F2, "(sum y (pp x 1))"), (F3, "(sum y (sc [2] (pp x 1)))")],
)
def test_transform_substitutes_inverse(field, expected):
    P = Presentation(field, ("x", "y"), (Gen("y"),))
    Q = apply_transform(P, GenTransform(1, 1, Pp(Gen("x"), 1)))
    assert format_tree(Q.relators[0], field) == expected
    assert format_tree(Q.definitions[1], field) == format_tree(Sum((Gen("y"), Pp(Gen("x"), 1))), field)
    assert check_presentation_equivalence(P, Q, 6)


def test_identity_transform_only_records_history():
    P = _worked_example()
    Q = apply_transform(P, GenTransform(0))
    assert Q.relators == P.relators
    assert len(Q.history) == 1


@pytest.mark.parametrize(
    "transform",
    [
        GenTransform(2),
        GenTransform(0, 0),
        GenTransform(0, 1, Pp(Gen("x"), 1)),
        GenTransform(0, 1, Br(Gen("y"), Gen("y"))),
        GenTransform(0, 1, Gen("w")),
    ],
)
def test_malformed_transforms(transform):
    with pytest.raises(MalformedTransform):
        apply_transform(_worked_example(), transform)


def test_swap_keeps_relators_and_moves_definitions():
    P = swap_generators(_worked_example(), 0, 1)
    assert P.generators == ("y", "x")
    assert P.definitions == (Gen("y"), Gen("x"))
    assert _rows(P) == [["[1]*t", "[1]*t"]]


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(F2, ("x", "x"), ())
    with pytest.raises(UnknownGenerator):
        Presentation(F2, ("x", "y"), (Gen("z"),))


def test_presentation_json_file(tmp_path):
    path = tmp_path / "presentation.json"
    path.write_text(json.dumps({
        "field": "gf(2)",
        "generators": ["x", "y"],
        "relators": ["(sum (pp x 1) (pp y 1) (br x y))"],
    }))
    P = Presentation.load(path)
    assert P == _worked_example()
    Q, _ = normalize(P)
    restored = Presentation.from_json(Q.to_json())
    assert restored.relators == Q.relators
    assert restored.definitions == Q.definitions


def test_equivalence_needs_the_same_origin():
    with pytest.raises(ValueError):
        check_presentation_equivalence(
            _worked_example(), Presentation(F2, ("a", "b"), ()), 4
        )


@pytest.mark.parametrize("literal", ["gf(3)", "gf(4; 1,1,1)", "gf(5)"])
def test_normalize_random_presentations_over_larger_fields(literal):
    F = parse_field(literal)
    rng = random.Random(13)
    for _ in range(3):
        P = random_presentation(F, rng, max_generators=3)
        Q, omitted = normalize(P)
        components = relator_power_components(Q)
        assert len(omitted) >= P.n - P.m
        assert all(name not in c for name in omitted for c in components)
        assert all(set(c) <= {Q.generators[i]} for i, c in enumerate(components))
        assert check_presentation_equivalence(P, Q, 4)
