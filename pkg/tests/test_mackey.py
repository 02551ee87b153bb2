import random

import pytest

from hhshadow.exact import AbHom, FGAbGroup, IntMatrix
from hhshadow.generate import random_mackey
from hhshadow.hochschild import hh
from hhshadow.mackey import (
    CyclotomicTower,
    TowerError,
    TwistedNerve,
    box,
    box_flatten_left,
    box_flatten_right,
    box_symmetry,
    box_unit_iso,
    burnside,
    constant_tower,
    divisors,
    ef_sub,
    etilde,
    fixed_point_green,
    fixed_point_mackey,
    g_twist,
    geometric_fixed_points,
    green_bicyclic,
    green_rotation,
    green_shadow_check,
    mackey_hh,
    matrix_green,
    phi_monoidal_compare,
    phi_vs_etilde,
    tr_tower,
    unit_green_bimodule,
)
from hhshadow.mackey.functor import MackeyFunctor
from hhshadow.ringbimod import automorphism, cyclic_ring, dual_numbers, group_ring, integers
from hhshadow.simplicial import levelwise_map_failures
from oracles import divisor_count, twisted_hh0_group_ring

Z1 = FGAbGroup.free(1)


def sign_green():
    A = group_ring(2)
    return fixed_point_green(2, A, automorphism(A, [[1, 0], [0, -1]]))


# -- constructors ------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_burnside_levels_count_orbit_types(m):
    A = burnside(m)
    assert not A.mackey.axiom_failures(first_only=True)
    for d in divisors(m):
        assert A.mackey.level(d).canonical_form() == (divisor_count(d), [])


def test_burnside_two_structure_maps():
    A = burnside(2).mackey
    # basis of level 2 is ([C_2/e], [C_2/C_2])
    assert A.res(1, 2).matrix.to_rows() == [[2, 1]]
    assert A.tr(2, 1).matrix.to_rows() == [[1], [0]]


@pytest.mark.parametrize("p", [2, 3])
def test_fixed_points_of_trivial_action(p):
    F = fixed_point_mackey(p, Z1)
    assert F.res(1, p).matrix.to_rows() == [[1]]
    assert F.tr(p, 1).matrix.to_rows() == [[p]]


def test_sign_representation_has_no_fixed_points():
    F = fixed_point_mackey(2, Z1, AbHom(Z1, Z1, [[-1]]))
    assert F.level(2).canonical_form() == (0, [])


@pytest.mark.parametrize("m", [2, 3, 4])
def test_fixed_point_functors_pass_axioms(m):
    V = FGAbGroup.from_orders([0, m])
    assert not fixed_point_mackey(m, V).axiom_failures()
    assert not fixed_point_green(m, cyclic_ring(m)).failures()


def test_invalid_action_order_rejected():
    A = group_ring(3)
    with pytest.raises(ValueError):
        # the cyclic shift has order 3, which does not divide 2
        fixed_point_green(2, A, automorphism(A, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]))


def test_broken_transfer_fails_axioms():
    F = fixed_point_mackey(2, Z1)
    bad = MackeyFunctor(2, {1: Z1, 2: Z1}, {(1, 2): F.res(1, 2).matrix}, {(2, 1): IntMatrix.from_rows([[3]])}, {1: IntMatrix.identity(1), 2: IntMatrix.identity(1)}, check=False)
    assert bad.axiom_failures()


def test_mackey_json_round_trip():
    F = fixed_point_mackey(4, FGAbGroup.from_orders([0, 2]))
    G = MackeyFunctor.from_json(F.to_json())
    assert G.canonical_forms() == F.canonical_forms()


# -- box products ------------------------------------------------------------------

def test_box_of_burnside_is_burnside():
    A = burnside(2)
    assert box(A, A).canonical_forms() == A.canonical_forms()
    assert box_unit_iso(A).is_isomorphism()


def test_box_of_fixed_integers():
    F = fixed_point_mackey(2, Z1)
    assert box(F, F).canonical_forms() == {1: (1, []), 2: (1, [])}


def _random_functors(seed, m=2):
    rng = random.Random(seed)
    return random_mackey(rng, m, 1), random_mackey(rng, m, 1)


@pytest.mark.parametrize("seed", range(10))
def test_box_unit_and_symmetry(seed):
    X, Y = _random_functors(seed)
    assert box_unit_iso(X).is_isomorphism()
    assert box_symmetry(box(X, Y), box(Y, X)).is_isomorphism()


@pytest.mark.parametrize("seed", range(10))
def test_box_associativity(seed):
    X, Y = _random_functors(seed)
    Z = fixed_point_mackey(2, Z1)
    flat = box(X, Y, Z)
    assert box_flatten_left(box(box(X, Y), Z), flat).is_isomorphism()
    assert box_flatten_right(box(X, box(Y, Z)), flat).is_isomorphism()


@pytest.mark.parametrize("m", [3, 4])
def test_box_unit_larger_groups(m):
    assert box_unit_iso(fixed_point_mackey(m, FGAbGroup.from_orders([0, 2]))).is_isomorphism()


# -- twists and nerves -------------------------------------------------------------

def _tables(P, d):
    B = P.bimodule(d)
    return B.left, B.right


def test_g_twist_trivial_weyl_is_identity():
    U = unit_green_bimodule(fixed_point_green(2, cyclic_ring(2)))
    for d in (1, 2):
        assert _tables(g_twist(U), d) == _tables(U, d)


def test_g_twist_twice_is_identity_over_c2():
    U = unit_green_bimodule(sign_green())
    assert _tables(g_twist(g_twist(U)), 1) == _tables(U, 1)
    assert _tables(g_twist(U), 1) != _tables(U, 1)


def test_g_twist_precomposes_left_action_with_weyl():
    R = sign_green()
    U = unit_green_bimodule(R)
    tw = g_twist(U).bimodule(1)
    w = R.weyl(1).matrix
    for a in range(R.algebra(1).n):
        for x in range(U.bimodule(1).n):
            assert tw.act_left({a: 1}, {x: 1}) == U.bimodule(1).act_left(w.column(a), {x: 1})


def test_nerve_level_zero_is_twisted_module():
    R = sign_green()
    N = TwistedNerve(R, T=1)
    assert N.levels[0].canonical_forms() == R.mackey.canonical_forms()


@pytest.mark.parametrize("p", [2, 3])
def test_hh_of_fixed_fp(p):
    H = mackey_hh(fixed_point_green(p, cyclic_ring(p)), max_degree=1)
    assert H[0].canonical_forms() == {1: (0, [p]), p: (0, [p])}
    assert H[1].canonical_forms() == {1: (0, []), p: (0, [])}


def test_hh_over_trivial_group_is_hh():
    R = fixed_point_green(1, dual_numbers())
    assert [h.canonical_forms()[1] for h in mackey_hh(R, max_degree=2)] == hh(dual_numbers(), max_degree=2).forms


def test_hh_bottom_level_is_twisted_hh0():
    H = mackey_hh(sign_green(), max_degree=0)
    assert H[0].canonical_forms()[1] == twisted_hh0_group_ring(2, 1, sign=-1)


def test_hh_of_burnside_two():
    H = mackey_hh(burnside(2), max_degree=0)
    assert H[0].canonical_forms() == {1: (1, []), 2: (2, [])}


def test_trivial_weyl_hh_independent_of_twist():
    R = fixed_point_green(2, integers())
    U = unit_green_bimodule(R)
    a = [h.canonical_forms() for h in mackey_hh(R, U, 1)]
    b = [h.canonical_forms() for h in mackey_hh(R, g_twist(U), 1)]
    assert a == b


# -- EF, ẼF and geometric fixed points ----------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
def test_etilde_of_burnside(p):
    assert etilde(burnside(p), p).canonical_forms() == {1: (0, []), p: (1, [])}


def test_ef_at_trivial_subgroup_is_zero():
    assert all(f == (0, []) for f in ef_sub(burnside(4), 1).canonical_forms().values())


@pytest.mark.parametrize("p", [2, 3])
def test_phi_of_burnside_is_burnside_of_quotient(p):
    assert geometric_fixed_points(burnside(p), p).canonical_forms() == {1: (1, [])}


def test_phi_of_burnside_four():
    assert geometric_fixed_points(burnside(4), 2).canonical_forms() == burnside(2).mackey.canonical_forms()


@pytest.mark.parametrize("p", [2, 3])
def test_phi_of_fixed_integers_and_fp(p):
    assert geometric_fixed_points(fixed_point_mackey(p, Z1), p).canonical_forms() == {1: (0, [p])}
    assert geometric_fixed_points(fixed_point_green(p, cyclic_ring(p)), p).canonical_forms() == {1: (0, [p])}


def test_phi_rejects_trivial_group():
    with pytest.raises(ValueError):
        geometric_fixed_points(fixed_point_mackey(1, Z1), 2)


PHI_INPUTS = [
    lambda: burnside(2),
    lambda: burnside(4),
    lambda: fixed_point_mackey(2, Z1),
    lambda: fixed_point_mackey(4, Z1),
    lambda: fixed_point_green(2, cyclic_ring(2)),
    lambda: fixed_point_mackey(3, FGAbGroup.from_orders([0, 3])),
]


@pytest.mark.parametrize("make", PHI_INPUTS)
def test_phi_agrees_with_etilde_route(make):
    M = make()
    p = 3 if (M.m if hasattr(M, "m") else M.mackey.m) == 3 else 2
    rep = phi_vs_etilde(M, p)
    assert rep.passed, str(rep)


def test_phi_monoidal_unit_and_fixed():
    F = fixed_point_mackey(2, Z1)
    assert phi_monoidal_compare([F, burnside(2)], 2).passed
    assert phi_monoidal_compare([F, F], 2).passed
    assert phi_monoidal_compare([burnside(4), fixed_point_mackey(4, Z1)], 2).passed


@pytest.mark.parametrize("seed", range(10))
def test_phi_monoidal_random(seed):
    X, Y = _random_functors(seed)
    assert phi_monoidal_compare([X, Y], 2).passed


# -- towers ------------------------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3])
def test_constant_tower(p):
    rep = tr_tower(constant_tower(p, cyclic_ring(p), 3), 0)
    assert all(v == (0, [p]) for v in rep.stage_values.values())
    assert set(rep.maps) == {1, 2}
    assert all(v == (0, [p]) for v in rep.limits.values())
    assert rep.stabilized and rep.stable_from <= 2


def test_constant_tower_report_is_deterministic():
    a = tr_tower(constant_tower(2, cyclic_ring(2), 3), 0).to_json()
    b = tr_tower(constant_tower(2, cyclic_ring(2), 3), 0).to_json()
    assert a == b


def test_single_stage_limit_is_stage_value():
    rep = tr_tower(constant_tower(2, cyclic_ring(2), 1), 0)
    assert rep.limits == {1: rep.stage_values[0]}
    assert not rep.stabilized


def test_wrong_structure_iso_aborts():
    rings = [fixed_point_green(3 ** n, cyclic_ring(3)) for n in range(3)]
    bad = [{d: IntMatrix.scalar(1, 3) for d in divisors(3 ** (n - 1))} for n in range(1, 3)]
    with pytest.raises(TowerError, match="stage 1"):
        CyclotomicTower(3, rings, bad)


def test_burnside_tower_does_not_stabilize():
    rings = [burnside(2 ** n) for n in range(3)]
    isos = []
    for n in range(1, 3):
        maps = {}
        for d in divisors(2 ** (n - 1)):
            src, tgt = divisors(2 * d), divisors(d)
            maps[d] = IntMatrix._trusted(len(tgt), len(src), [{tgt.index(e // 2): 1} if e % 2 == 0 else {} for e in src])
        isos.append(maps)
    rep = tr_tower(CyclotomicTower(2, rings, isos), 0)
    assert [rep.stage_values[n] for n in range(3)] == [(1, []), (2, []), (3, [])]
    assert not rep.stabilized


# -- Green shadow ------------------------------------------------------------------

def test_green_shadow_unit_case():
    A = burnside(2)
    U = unit_green_bimodule(A)
    assert green_shadow_check(A, A, U, U, 0).passed


@pytest.mark.parametrize("k", [0, 1])
def test_green_shadow_matrix_pair(k):
    R = fixed_point_green(2, cyclic_ring(2))
    S, M, N = matrix_green(R, 2)
    rep = green_shadow_check(R, S, M, N, k)
    assert rep.passed, str(rep)
    assert rep.data["R_side"][0] == (0, [2])


def test_green_shadow_with_nontrivial_weyl():
    R = sign_green()
    S, M, N = matrix_green(R, 2)
    rep = green_shadow_check(R, S, M, N, 1)
    assert rep.passed, str(rep)


def test_rotation_without_weyl_fails():
    R = sign_green()
    U = unit_green_bimodule(R)
    X = green_bicyclic(U, R, U, R, 2)
    Y = green_bicyclic(U, R, U, R, 2)
    assert not levelwise_map_failures(X, Y, green_rotation(X, Y, U, R, weyl=True), True, 2)
    bad = levelwise_map_failures(X, Y, green_rotation(X, Y, U, R, weyl=False), True, 2)
    assert bad and any("outer face" in b for b in bad)
