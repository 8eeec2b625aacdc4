import pytest

from errors import NotAnIdeal, NotInIdeal, PreconditionFailed, SpanningFailure
from field.field import FiniteField
from freerla.freerla import build_algebra, parse_expr
from quotient.quotient import (
    check_power_ideal_inclusion,
    check_zp,
    complement_basis,
    derived_p_series,
    filtration_ideal,
    find_d_for_subspace,
    ideal_closure,
    is_nilpotent,
    is_restricted_ideal,
    is_subalgebra,
    lower_central_series,
    nil_index,
    quotient_algebra,
    subalgebra_closure,
    zp_generators,
)
from quotient.subspace import FdSubspace

F2 = FiniteField(2)


def _algebra(N, field=F2, generators=("x", "y")):
    return build_algebra(field, generators, N)


def test_subalgebra_generated_by_generator():
    A = _algebra(8)
    S = subalgebra_closure(A, [A.generator("x")])
    assert S.dim == 4
    assert is_subalgebra(A, S)


def test_subalgebra_generated_by_commutator():
    A = _algebra(4)
    assert subalgebra_closure(A, [parse_expr("(br x y)", A)]).dim == 2


def test_ideal_generated_by_y():
    A = _algebra(4)
    I = ideal_closure(A, [A.generator("y")])
    assert I.codim == 3
    assert is_restricted_ideal(A, I, exhaustive=True)
    assert quotient_algebra(A, I).dim == 3


def test_subspace_membership_and_expression():
    A = _algebra(4)
    V = FdSubspace(A, track=True)
    V.add(A.generator("x").vector, "a")
    V.add((A.generator("x") + A.generator("y")).vector, "b")
    assert V.contains(A.generator("y").vector)
    combo = V.express(A.generator("y").vector)
    assert combo is not None and set(combo) == {0, 1}
    assert V.express(parse_expr("(br x y)", A).vector) is None


def test_zp_generators_list_exponents_lexicographically():
    A = _algebra(3)
    N_ideal = ideal_closure(A, [A.generator("y")])
    T = complement_basis(A, N_ideal)
    Z = zp_generators(A, N_ideal, A.generator("y"), T)
    assert len(T) == 2
    assert len(Z) == 4
    assert Z[0] == A.generator("y")
    assert Z[2] == parse_expr("(br x y)", A)
    assert check_zp(A, N_ideal, A.generator("y"), T)


def test_zp_requires_spanning_set():
    A = _algebra(6)
    N_ideal = ideal_closure(A, [A.generator("y")])
    with pytest.raises(SpanningFailure):
        zp_generators(A, N_ideal, A.generator("y"), [A.generator("x")])


def test_zp_requires_g_in_ideal():
    A = _algebra(4)
    N_ideal = ideal_closure(A, [A.generator("y")])
    with pytest.raises(NotInIdeal):
        zp_generators(A, N_ideal, A.generator("x"), complement_basis(A, N_ideal))


def test_zp_dropping_last_element_loses_the_ideal():
    A = _algebra(4)
    N_ideal = ideal_closure(A, [A.generator("y")])
    T = complement_basis(A, N_ideal)
    assert not check_zp(A, N_ideal, A.generator("y"), T, drop_last=True)


def test_filtration_ideal_codimension():
    A = _algebra(6)
    I = filtration_ideal(A, 3)
    assert I.codim == 5
    assert is_restricted_ideal(A, I)
    with pytest.raises(ValueError):
        filtration_ideal(A, 0)


def test_power_ideal_inclusion_instance():
    A = _algebra(8)
    H = ideal_closure(A, [A.generator("y"), parse_expr("(pp x 1)", A)])
    assert H.codim == 1
    assert check_power_ideal_inclusion(A, H, A.generator("y"), 2)


def test_power_ideal_inclusion_preconditions():
    A = _algebra(6)
    H = ideal_closure(A, [A.generator("y")])
    with pytest.raises(PreconditionFailed):
        check_power_ideal_inclusion(A, H, A.generator("y"), 1)
    with pytest.raises(NotInIdeal):
        check_power_ideal_inclusion(A, H, A.generator("x"), H.codim)


def test_derived_series_first_terms():
    A = _algebra(4)
    series = derived_p_series(A)
    assert series[0].dim == 13
    assert series[1].dim == 11
    for D in series:
        assert is_nilpotent(quotient_algebra(A, D))


def test_find_d():
    A = _algebra(4)
    assert find_d_for_subspace(A, FdSubspace.span(A, [A.generator("x").vector])) == 1
    B = _algebra(8)
    V = FdSubspace.span(B, [B.generator("x").vector, parse_expr("(br x y)", B).vector])
    assert find_d_for_subspace(B, V) == 2
    assert find_d_for_subspace(A, FdSubspace(A)) == 0


def test_nil_index():
    A = _algebra(8)
    assert nil_index(A, A.generator("x")) == 16
    assert nil_index(A, A.zero()) == 1
    assert nil_index(_algebra(4), parse_expr("(br x y)", _algebra(4))) == 4


def test_quotient_requires_an_ideal():
    A = _algebra(4)
    S = subalgebra_closure(A, [A.generator("x")])
    with pytest.raises(NotAnIdeal):
        quotient_algebra(A, S)


def test_quotient_satisfies_main_identity_and_is_nilpotent():
    A = _algebra(5, FiniteField(3))
    Q = quotient_algebra(A, ideal_closure(A, [parse_expr("(br x y)", A)]))
    assert Q.check_main_identity()
    assert lower_central_series(Q)[-1].dim == 0


def _zp_ideals(A):
    x, y = A.generator("x"), A.generator("y")
    return [ideal_closure(A, [x.bracket(y)]), filtration_ideal(A, 2)]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_zp_for_commutator_ideal_and_weight_two_filtration(p, N):
    A = _algebra(N, FiniteField(p))
    x, y = A.generator("x"), A.generator("y")
    candidates = [x.bracket(y), x.bracket(x.bracket(y)), y.pmap(), x.pmap() + x.bracket(y)]
    checked = 0
    for N_ideal in _zp_ideals(A):
        T = complement_basis(A, N_ideal)
        for g in candidates:
            if not g.is_zero() and N_ideal.contains(g.vector):
                assert check_zp(A, N_ideal, g, T)
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ideal_closure_is_idempotent_and_restricted(p):
    A = _algebra(4, FiniteField(p))
    for expr in ("y", "(br x y)", "(sum (pp x 1) y)"):
        I = ideal_closure(A, [parse_expr(expr, A)])
        assert ideal_closure(A, I.rows) == I
        assert is_restricted_ideal(A, I, exhaustive=True)


def test_ideal_closure_over_binary_field_with_scaled_rows():
    A = _algebra(6)
    I = ideal_closure(A, [A.generator("y") + parse_expr("(br x y)", A)])
    assert I.contains(A.generator("y").vector)
    assert I.codim == 3


def test_subspace_storage_starts_small_and_grows():
    A = _algebra(8)
    assert A.dim > 16
    V = FdSubspace.span(A, [A.generator("x").vector])
    assert len(V._mat) <= 16
    assert V.dim == 1
    full = FdSubspace.full(A)
    assert full.dim == A.dim
    assert full.codim == 0
