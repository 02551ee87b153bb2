import random

import pytest
from hypothesis import given, strategies as st

from hhshadow.generate import random_algebra, random_automorphism
from hhshadow.hochschild import hh
from hhshadow.ringbimod import AlgebraHom, AxiomError, automorphism, cyclic_ring, group_ring, product_algebra
from hhshadow.twisted import (
    TwistedAlgebra,
    hh_twisted,
    matrix_twisted_pair,
    twisted_cyclic_iso_check,
    twisted_hh0,
    twisted_morita_check,
)
from oracles import twisted_hh0_group_ring


def sign_twist():
    A = group_ring(2)
    return TwistedAlgebra(A, automorphism(A, [[1, 0], [0, -1]]))


def test_sign_twist_hh0_matches_independent_quotient():
    # span{φ(a)b - ba} = span{2, 2t}, so the quotient is (Z/2)^2
    oracle = twisted_hh0_group_ring(2, 1, sign=-1)
    assert oracle == (0, [2, 2])
    assert hh_twisted(sign_twist(), max_degree=0).forms[0] == oracle


@pytest.mark.parametrize("n, k, sign", [(2, 1, 1), (3, 2, 1), (3, 1, 1), (2, 1, -1)])
def test_group_ring_twists_match_oracle(n, k, sign):
    A = group_ring(n)
    # φ(t^i) = sign^i t^{k i} on the monomial basis
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[(k * i) % n][i] = sign ** i
    TA = TwistedAlgebra(A, automorphism(A, rows))
    assert hh_twisted(TA, max_degree=0).forms[0] == twisted_hh0_group_ring(n, k, sign)


def test_swap_on_f3_squared_kills_hh0():
    A = product_algebra(cyclic_ring(3), cyclic_ring(3))
    TA = TwistedAlgebra(A, automorphism(A, [[0, 1], [1, 0]]))
    assert hh_twisted(TA, max_degree=1).forms == [(0, []), (0, [])]


@given(st.integers(0, 10_000))
def test_identity_twist_is_ordinary_hh(seed):
    A = random_algebra(random.Random(seed), 2)
    assert hh_twisted(TwistedAlgebra(A), max_degree=1).forms == hh(A, max_degree=1).forms


@given(st.integers(0, 10_000))
def test_hh0_matches_closed_form(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, 2)
    TA = TwistedAlgebra(A, random_automorphism(rng, A))
    assert hh_twisted(TA, max_degree=0).forms[0] == twisted_hh0(TA).canonical_form()


def test_non_invertible_twist_rejected():
    A = group_ring(2)
    with pytest.raises((AxiomError, ValueError)):
        TwistedAlgebra(A, AlgebraHom(A, A, [[1, 1], [0, 0]]))


def test_cyclic_iso_on_sign_twist():
    TA = sign_twist()
    U = TA.unit()
    rep = twisted_cyclic_iso_check(TA, TA, U, U, T=3)
    assert rep.passed, str(rep)


def test_negated_structure_map_still_passes():
    TA = sign_twist()
    U = TA.unit()
    assert twisted_cyclic_iso_check(TA, TA, U, U.negated(), T=2).passed


def test_identity_twists_reduce_to_bicyclic_swap():
    from hhshadow.hochschild import bicyclic_swap_check
    from hhshadow.ringbimod import matrix_morita_pair
    from hhshadow.twisted import TwistedBimodule
    A = cyclic_ring(2)
    TA = TwistedAlgebra(A)
    d = matrix_morita_pair(A, 2)
    TB = TwistedAlgebra(d.B)
    rep = twisted_cyclic_iso_check(TA, TB, TwistedBimodule(d.M, TA, TB), TwistedBimodule(d.N, TB, TA), T=2)
    plain = bicyclic_swap_check(d.A, d.B, d.M, d.N, T=2)
    assert rep.passed and plain.passed
    assert rep.data["diagonal_X"] == plain.data["diagonal_X"]


def test_twisted_morita_on_matrix_pair():
    TA = sign_twist()
    d, TB, TM, TN = matrix_twisted_pair(TA, 2)
    rep = twisted_morita_check(d, TM, TN)
    assert rep.passed, str(rep)
    assert any(c.name.startswith("twisted Euler characteristic") and c.passed for c in rep.checks)
