import random

import pytest
from hypothesis import given, strategies as st

from hhshadow import fixtures
from hhshadow.generate import random_algebra, random_pair, random_triple
from hhshadow.hochschild import (
    ResourceLimitError,
    bicyclic_swap_check,
    cyclic_bar,
    euler_characteristic,
    hattori_stallings,
    hh,
    morita_hh_check,
    shadow_coherence_check,
)
from hhshadow.ringbimod import automorphism, cyclic_ring, group_ring, integers, matrix_algebra, matrix_morita_pair, tensor_over
from oracles import dual_numbers_hh, group_homology_cyclic


def test_dual_numbers_against_periodic_resolution():
    oracle = dual_numbers_hh(3)
    assert oracle[:3] == [(2, []), (1, [2]), (1, [])]
    assert hh(fixtures.algebra("dual_numbers"), max_degree=3).forms == oracle


def test_dual_numbers_text():
    assert str(hh(fixtures.algebra("dual_numbers"), max_degree=2)) == "HH_0 = Z^2, HH_1 = Z + Z/2, HH_2 = Z"


def test_integers():
    assert str(hh(integers(), max_degree=1)) == "HH_0 = Z, HH_1 = 0"


@pytest.mark.parametrize("n", [2, 3])
def test_group_ring_is_sum_of_group_homologies(n):
    # Z[C_n] is commutative, so HH_q = ⊕ over the n elements of H_q(C_n)
    R = hh(group_ring(n), max_degree=2)
    for q in range(3):
        free, tors = group_homology_cyclic(n, q)
        assert R.forms[q] == (n * free, [n] * len(tors) * n if tors else [])


@pytest.mark.parametrize("n", [2, 4, 6])
def test_cyclic_rings_have_no_higher_homology(n):
    # every level is Z/n and the face sums alternate between id and 0
    assert hh(cyclic_ring(n), max_degree=2).forms == [(0, [n]), (0, []), (0, [])]


@given(st.integers(0, 10_000))
def test_normalized_and_unnormalized_agree(seed):
    A = random_algebra(random.Random(seed), 2)
    assert hh(A, max_degree=1).forms == hh(A, max_degree=1, normalized=False).forms


@given(st.integers(0, 10_000))
def test_cyclic_bar_is_simplicial(seed):
    A = random_algebra(random.Random(seed), 2)
    assert not cyclic_bar(A, T=3, verify=False).identity_failures(first_only=True)


def test_truncation_guards_top_degree():
    R = hh(integers(), max_degree=1)
    with pytest.raises(IndexError):
        R[2]


def test_resource_ceiling():
    with pytest.raises(ResourceLimitError, match="generators"):
        hh(matrix_algebra(integers(), 2), max_degree=3, ceiling=100)


@pytest.mark.parametrize("name", sorted(fixtures.PAIRS))
def test_morita_invariance(name):
    rep = morita_hh_check(fixtures.morita_pair(name), max_degree=2)
    assert rep.passed, str(rep)


def test_euler_characteristic_of_row_pair():
    chi = euler_characteristic(matrix_morita_pair(integers(), 2))
    assert chi.source.canonical_form() == (1, []) and chi.target.canonical_form() == (1, [])
    assert abs(chi.matrix.to_rows()[0][0]) == 1


def test_bicyclic_swap_on_z_and_m2z():
    d = matrix_morita_pair(integers(), 2)
    rep = bicyclic_swap_check(d.A, d.B, d.M, d.N, T=3)
    assert rep.passed, str(rep)


def test_shifted_rotation_fails_at_outer_faces():
    d = matrix_morita_pair(integers(), 2)
    rep = bicyclic_swap_check(d.B, d.A, d.N, d.M, T=2, shift=1)
    assert not rep.passed
    assert any(f.startswith("outer face 2") for f in rep.data["failures"])


@pytest.mark.parametrize("seed", range(4))
def test_bicyclic_swap_random(seed):
    A, B, M, N = random_pair(random.Random(seed), 2)
    assert bicyclic_swap_check(A, B, M, N, T=2).passed


@given(st.integers(0, 10_000))
def test_shadow_coherence_random(seed):
    M, N, P = random_triple(random.Random(seed), 2)
    rep = shadow_coherence_check(M, N, P)
    assert rep.passed, str(rep)


def _z(k):
    return [k]


def test_hattori_stallings_identity():
    A = integers()
    for n in (1, 2, 3):
        e = [[_z(int(i == j)) for j in range(n)] for i in range(n)]
        x = hattori_stallings(A, None, e, e)
        assert x.normal_form == x.group.normal_form([n])


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_hattori_stallings_is_matrix_trace_over_z(F):
    e = [[_z(int(i == j)) for j in range(3)] for i in range(3)]
    x = hattori_stallings(integers(), None, e, [[_z(v) for v in row] for row in F])
    assert x.normal_form == x.group.normal_form([F[0][0] + F[1][1] + F[2][2]])


def test_hattori_stallings_on_proper_idempotent():
    # e projects onto the first summand of Z^2
    e = [[_z(1), _z(0)], [_z(0), _z(0)]]
    F = [[_z(5), _z(0)], [_z(0), _z(0)]]
    x = hattori_stallings(integers(), None, e, F)
    assert x.normal_form == x.group.normal_form([5])
    with pytest.raises(ValueError):
        hattori_stallings(integers(), None, e, [[_z(1), _z(1)], [_z(0), _z(0)]])


def _elementary(A, r, i, j, a):
    one = A.unit
    return [[dict(one) if p == q else (a if (p, q) == (i, j) else {}) for q in range(r)] for p in range(r)]


def _mul(A, X, Y):
    from hhshadow.hochschild import _mat_mul
    return _mat_mul(A, X, Y)


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_hattori_stallings_conjugation_invariance(ops, entries):
    A = group_ring(2)
    r = 2
    P = _elementary(A, r, 0, 0, {})
    Pinv = P
    for which, a0, a1 in ops:
        i, j = (0, 1) if which == 0 else (1, 0)
        a = {k: v for k, v in ((0, a0), (1, a1)) if v}
        P = _mul(A, _elementary(A, r, i, j, a), P)
        Pinv = _mul(A, Pinv, _elementary(A, r, i, j, {k: -v for k, v in a.items()}))
    e = _elementary(A, r, 0, 0, {})
    F = [[{0: entries[4 * p + 2 * q], 1: entries[4 * p + 2 * q + 1]} for q in range(r)] for p in range(r)]
    G = _mul(A, _mul(A, P, F), Pinv)
    assert hattori_stallings(A, None, e, F) == hattori_stallings(A, None, e, G)


def test_twisted_hattori_stallings_lands_on_order_two_class():
    A = group_ring(2)
    phi = automorphism(A, [[1, 0], [0, -1]])
    x = hattori_stallings(A, phi, [[{0: 1}]], [[{1: 1}]])
    assert not x.is_zero() and (2 * x).is_zero()
    assert x.group.canonical_form() == (0, [2, 2])


@given(st.integers(0, 10**6))
def test_two_homology_routes_agree(seed):
    # the resolution route against the lattice route, on complexes with torsion
    A, B, M, N = random_pair(random.Random(seed), 2)
    C = cyclic_bar(A, tensor_over(M, N), T=2).moore_complex()
    for q in range(2):
        assert C.homology_group(q).group.canonical_form() == C.homology_canonical(q)
