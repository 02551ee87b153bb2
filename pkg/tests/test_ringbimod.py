import pytest
from hypothesis import given, strategies as st

from hhshadow.exact import FGAbGroup
from hhshadow.ringbimod import (
    Algebra,
    AxiomError,
    Bimodule,
    automorphism,
    check_dual_pair,
    check_morita,
    cyclic_ring,
    dual_numbers,
    group_ring,
    identity_pair,
    integers,
    matrix_algebra,
    matrix_morita_pair,
    tensor_over,
    unit_bimodule,
)
from hhshadow import fixtures


@pytest.mark.parametrize("name", sorted(fixtures.ALGEBRAS))
def test_fixture_algebras_pass_axioms(name):
    A = fixtures.algebra(name)
    A.check()
    unit_bimodule(A).check()


def test_non_associative_table_is_rejected():
    # basis 1, x with x*x = 1 + x but the unit row broken
    with pytest.raises(AxiomError):
        Algebra(FGAbGroup.free(2), [[{0: 1}, {1: 1}], [{1: 1}, {1: 2}]], {1: 1})


def test_ill_defined_multiplication_is_rejected():
    # the unit has order 2 but x = 1·x is free, so 2·x = 0 cannot hold
    G = FGAbGroup(2, [[2, 0]])
    with pytest.raises(AxiomError):
        Algebra(G, [[{0: 1}, {1: 1}], [{1: 1}, {1: 1}]], {0: 1})


def test_non_automorphism_is_rejected():
    A = group_ring(2)
    with pytest.raises((AxiomError, ValueError)):
        automorphism(A, [[0, 1], [1, 0]])


def test_bimodule_with_broken_right_action_is_rejected():
    A = dual_numbers()
    U = unit_bimodule(A)
    right = [list(row) for row in U.right]
    right[0][1] = {0: 1}  # 1·x = 1 breaks associativity against x·x = 0
    with pytest.raises(AxiomError):
        Bimodule(A, A, U.group, U.left, right)


@given(st.sampled_from(["z", "z2", "z4", "dual_numbers", "zc2"]), st.integers(1, 3))
def test_matrix_algebra_rank(name, r):
    A = fixtures.algebra(name)
    B = matrix_algebra(A, r)
    assert B.group.canonical_form()[0] == r * r * A.group.canonical_form()[0]


@pytest.mark.parametrize("name", ["z", "z2", "z4", "zc2"])
def test_row_column_pair_is_morita(name):
    d = matrix_morita_pair(fixtures.algebra(name), 2)
    assert check_dual_pair(d).passed
    assert check_morita(d).passed


def test_identity_pair():
    assert check_morita(identity_pair(dual_numbers())).passed


def test_tensor_over_unit_is_module():
    A = cyclic_ring(4)
    M = matrix_morita_pair(A, 2).M
    assert tensor_over(unit_bimodule(A), M).group.isomorphic(M.group)
    assert tensor_over(M, unit_bimodule(M.right_algebra)).group.isomorphic(M.group)


def test_row_tensor_column_is_algebra():
    A = integers()
    d = matrix_morita_pair(A, 3)
    assert tensor_over(d.M, d.N).group.canonical_form() == (1, [])
    assert tensor_over(d.N, d.M).group.canonical_form() == (9, [])
