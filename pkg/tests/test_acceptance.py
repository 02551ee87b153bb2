"""The ten primary acceptance criteria, one test each.

Each test records a PASS/FAIL line with its wall time; the lines are printed
in the terminal summary."""

import random
import time

import pytest

from hhshadow import fixtures
from hhshadow.exact import FGAbGroup
from hhshadow.generate import random_mackey, random_pair, random_triple
from hhshadow.hochschild import bicyclic_swap_check, hattori_stallings, hh, morita_hh_check, shadow_coherence_check
from hhshadow.lincat import Functor, agreement_check, augmented_bar_check, free_category
from hhshadow.mackey import (
    box,
    box_symmetry,
    box_unit_iso,
    burnside,
    constant_tower,
    fixed_point_green,
    fixed_point_mackey,
    geometric_fixed_points,
    green_shadow_check,
    matrix_green,
    phi_monoidal_compare,
    phi_vs_etilde,
    tr_tower,
)
from hhshadow.ringbimod import automorphism, cyclic_ring, group_ring, integers, matrix_morita_pair, product_algebra
from hhshadow.twisted import TwistedAlgebra, hh_twisted, matrix_twisted_pair, twisted_cyclic_iso_check, twisted_morita_check
from oracles import dual_numbers_hh, twisted_hh0_group_ring

RESULTS = {}


class Criterion:
    def __init__(self, n, title, budget):
        self.n, self.title, self.budget = n, title, budget
        self.note = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.start
        ok = exc_type is None and (self.budget is None or dt < self.budget)
        why = "" if exc_type is None else f" ({exc_type.__name__}: {str(exc).splitlines()[0][:160] if str(exc) else ''})"
        if exc_type is None and not ok:
            why = f" (over the {self.budget:.0f}s budget)"
        RESULTS[self.n] = f"criterion {self.n:>2}: {'PASS' if ok else 'FAIL'}  {self.title}  [{dt:.1f}s]{why}{self.note}"
        if exc_type is None:
            assert ok, RESULTS[self.n]
        return False


def test_criterion_01_dual_numbers():
    with Criterion(1, "HH of dual numbers against the periodic resolution", 60):
        oracle = dual_numbers_hh(2)
        assert oracle == [(2, []), (1, [2]), (1, [])]
        assert hh(fixtures.algebra("dual_numbers"), max_degree=2).forms == oracle


def test_criterion_02_morita():
    with Criterion(2, "Morita invariance of HH_{<=2} for Z, Z/2, Z/4, Z[t]/(t^2-1)", 600):
        for name in ("z_vs_m2z", "z2_vs_m2z2", "z4_vs_m2z4", "zc2_vs_m2zc2"):
            rep = morita_hh_check(fixtures.morita_pair(name), max_degree=2)
            assert rep.passed, f"{name}: {[c.name for c in rep.failures()]}"


def test_criterion_03_bicyclic():
    with Criterion(3, "bicyclic rotation on 20 random pairs and Z/M_2(Z) through (3,3)", 900):
        d = matrix_morita_pair(integers(), 2)
        instances = [(d.A, d.B, d.M, d.N)] + [random_pair(random.Random(f"acceptance:{s}"), 2) for s in range(20)]
        for i, (A, B, M, N) in enumerate(instances):
            rep = bicyclic_swap_check(A, B, M, N, T=3)
            assert rep.passed, f"instance {i}: {[c.name for c in rep.failures()]}"


def test_criterion_04_coherence():
    with Criterion(4, "degree-0 hexagon and unit diagrams on 20 random triples", None):
        for s in range(20):
            rep = shadow_coherence_check(*random_triple(random.Random(f"acceptance:{s}"), 2))
            assert rep.passed, f"triple {s}: {[c.name for c in rep.failures()]}"


def _sign():
    A = group_ring(2)
    return TwistedAlgebra(A, automorphism(A, [[1, 0], [0, -1]]))


@pytest.mark.xfail(strict=True, reason="the stated value Z + Z/2 omits the relation 2 = -t·t - t·t; the quotient is Z/2 + Z/2")
def test_criterion_05_stated_sign_twist_value():
    assert hh_twisted(_sign(), max_degree=0).forms[0] == (1, [2])


def test_criterion_05_twisted():
    c = Criterion(5, "twisted HH, three-step isomorphism, twisted Euler characteristic", 600)
    with c:
        TA = _sign()
        computed = hh_twisted(TA, max_degree=0).forms[0]
        assert computed == twisted_hh0_group_ring(2, 1, sign=-1) == (0, [2, 2])
        F = product_algebra(cyclic_ring(3), cyclic_ring(3))
        TF = TwistedAlgebra(F, automorphism(F, [[0, 1], [1, 0]]))
        assert hh_twisted(TF, max_degree=0).forms[0] == (0, [])
        for T_ in (TA, TF):
            assert twisted_cyclic_iso_check(T_, T_, T_.unit(), T_.unit(), T=3).passed
        d, TB, TM, TN = matrix_twisted_pair(TA, 2)
        # M_2(Z[C_2]) has rank 8, so bidegree (3,3) is out of desk range; (2,2) here
        assert twisted_cyclic_iso_check(TA, TB, TM, TN, T=2).passed
        rep = twisted_morita_check(d, TM, TN)
        assert rep.passed
        # the stated HH^phi_0 = Z + Z/2 is not what the quotient gives; see the xfail above
        c.note = " (stated value Z + Z/2 for the sign twist disagrees with the computed and independently derived Z/2 + Z/2; every other part passes)"
        raise AssertionError("HH^phi_0(Z[t]/(t^2-1), t -> -t) is Z/2 + Z/2, not Z + Z/2")


def test_criterion_06_agreement():
    with Criterion(6, "many-object agreement and augmented-bar exactness", 900):
        for A in (integers(), cyclic_ring(2)):
            assert agreement_check(A, 2, 2).passed
        F = free_category(integers(), 2)
        I = Functor.identity(F)
        for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
            assert augmented_bar_check(F, I, I, a, b, T=3).passed


def test_criterion_07_mackey():
    with Criterion(7, "Mackey axioms, box unit/symmetry, Phi and its identifications", 900):
        Z1 = FGAbGroup.free(1)
        for m in (2, 3, 4):
            assert not burnside(m).failures()
            assert not fixed_point_mackey(m, FGAbGroup.from_orders([0, m])).axiom_failures()
            assert not fixed_point_green(m, cyclic_ring(m)).failures()
        for s in range(10):
            rng = random.Random(f"acceptance:{s}")
            X, Y = random_mackey(rng, 2, 1), random_mackey(rng, 2, 1)
            assert box_unit_iso(X).is_isomorphism()
            assert box_symmetry(box(X, Y), box(Y, X)).is_isomorphism()
        for p in (2, 3):
            assert geometric_fixed_points(burnside(p), p).top().canonical_form() == (1, [])
        phi_inputs = [(burnside(2), 2), (burnside(4), 2), (burnside(3), 3), (fixed_point_mackey(2, Z1), 2),
                      (fixed_point_mackey(4, Z1), 2), (fixed_point_green(2, cyclic_ring(2)), 2)]
        for M, p in phi_inputs:
            assert phi_vs_etilde(M, p).passed
        named = [fixed_point_mackey(2, Z1), burnside(2).mackey, fixed_point_green(2, cyclic_ring(2)).mackey,
                 fixed_point_mackey(2, Z1, __import__("hhshadow.exact", fromlist=["AbHom"]).AbHom(Z1, Z1, [[-1]]))]
        for X in named:
            for Y in named:
                assert phi_monoidal_compare([X, Y], 2).passed


def test_criterion_08_green_shadow():
    with Criterion(8, "Green shadow at the top level, fixed-point/matrix pair over C_2, k <= 1", None):
        R = fixed_point_green(2, cyclic_ring(2))
        S, M, N = matrix_green(R, 2)
        rep = green_shadow_check(R, S, M, N, 1)
        assert rep.passed, [c.name for c in rep.failures()]


def test_criterion_09_tower():
    with Criterion(9, "constant F_p tower: validation, stage values, restriction maps, limits", 300):
        for p in (2, 3):
            T = constant_tower(p, cyclic_ring(p), 3)
            rep = tr_tower(T, 0)
            assert all(v == (0, [p]) for v in rep.stage_values.values())
            assert set(rep.maps) == {1, 2}
            assert rep.stabilized
            assert rep.to_json() == tr_tower(constant_tower(p, cyclic_ring(p), 3), 0).to_json()


def test_criterion_10_hattori_stallings():
    with Criterion(10, "Hattori-Stallings traces", None):
        Z = integers()
        for n in (1, 2, 3):
            e = [[[int(i == j)] for j in range(n)] for i in range(n)]
            assert hattori_stallings(Z, None, e, e).normal_form == (n,)
        rng = random.Random("acceptance:hs")
        for _ in range(20):
            F = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            P = [[int(i == j) for j in range(3)] for i in range(3)]
            Pinv = [row[:] for row in P]
            for _ in range(4):
                i, j = rng.sample(range(3), 2)
                k = rng.randint(-3, 3)
                P = [[P[r][c] + (k * P[j][c] if r == i else 0) for c in range(3)] for r in range(3)]
                Pinv = [[Pinv[r][c] - (k * Pinv[r][i] if c == j else 0) for c in range(3)] for r in range(3)]
            assert [[sum(P[r][t] * Pinv[t][c] for t in range(3)) for c in range(3)] for r in range(3)] == [[int(r == c) for c in range(3)] for r in range(3)]
            G = [[sum(P[r][s] * F[s][t] * Pinv[t][c] for s in range(3) for t in range(3)) for c in range(3)] for r in range(3)]
            e = [[[int(i == j)] for j in range(3)] for i in range(3)]
            tr = F[0][0] + F[1][1] + F[2][2]
            a = hattori_stallings(Z, None, e, [[[v] for v in row] for row in F])
            b = hattori_stallings(Z, None, e, [[[v] for v in row] for row in G])
            assert a == b and a.normal_form == a.group.normal_form([tr])
        A = group_ring(2)
        x = hattori_stallings(A, automorphism(A, [[1, 0], [0, -1]]), [[{0: 1}]], [[{1: 1}]])
        assert not x.is_zero() and (2 * x).is_zero()
