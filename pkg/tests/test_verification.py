import pytest

from config import SUITES
from verification.verification import (
    SUITE_RUNNERS,
    run_suite,
    run_suites,
    worked_example,
)

SMALL = {
    "main_identity": 10,
    "jacobson": 10,
    "ore_division": 20,
    "ore_matrices": 5,
    "normalize": 4,
    "find_d": 3,
}


def test_every_listed_suite_has_a_runner():
    assert sorted(SUITE_RUNNERS) == sorted(SUITES)


@pytest.mark.parametrize("name", ["certificate", "ore", "jacobson", "derived"])
def test_cheap_suites_pass(name):
    result = run_suite(name, 7, SMALL)
    assert result["ok"], result
    assert result["suite"] == name
    assert result["failed"] == 0 and result["passed"] > 0


def test_suites_are_reproducible_for_a_seed():
    first = run_suite("ore", 3, SMALL)
    second = run_suite("ore", 3, SMALL)
    assert first == second


def test_run_suites_sorts_results_and_rejects_unknown_names():
    results = run_suites(["ore", "certificate"], 7, sizes=SMALL, progress=False)
    assert [r["suite"] for r in results] == ["certificate", "ore"]
    with pytest.raises(ValueError):
        run_suites(["nope"], 7, progress=False)


def test_worked_example_shape():
    P = worked_example()
    assert P.n == 2 and P.m == 1


def test_normalize_suite_covers_odd_and_extension_fields():
    result = run_suite("normalize", 11, SMALL)
    assert result["ok"], result
    assert result["fields"] == ["gf(2)", "gf(3)", "gf(4; 1,1,1)", "gf(5)"]


def test_generator_set_suite_covers_several_ideals():
    result = run_suite("generator_set", 7, SMALL)
    assert result["ok"], result
    assert result["passed"] > 90
