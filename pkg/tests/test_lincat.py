import pytest

from hhshadow.exact import FGAbGroup
from hhshadow.hochschild import cyclic_bar, hh
from hhshadow.lincat import (
    Functor,
    LinearCategory,
    agreement_check,
    augmented_bar_check,
    canonical_bimodule,
    cyclic_bar_cat,
    free_category,
    hh_cat,
    hom_bimodule,
    inclusion,
    one_object,
)
from hhshadow.ringbimod import AxiomError, cyclic_ring, dual_numbers, integers, product_algebra, unit_bimodule


def test_one_object_cyclic_bar_is_bit_identical():
    A = dual_numbers()
    X, Y = cyclic_bar(A, None, 3), cyclic_bar_cat(one_object(A), None, 3)
    for q in range(4):
        assert X.levels[q].relations == Y.levels[q].relations
    for q in range(1, 4):
        for i in range(q + 1):
            assert X.faces[q][i].matrix == Y.faces[q][i].matrix


def test_one_object_canonical_bimodule_is_unit():
    A = cyclic_ring(4)
    P = canonical_bimodule(one_object(A))
    U = unit_bimodule(A)
    assert P.groups[(0, 0)] == U.group


def test_free_category_level_one_count():
    # hom ranks 1, 2, 2, 4 over the object pairs give 1 + 4 + 4 + 16
    assert cyclic_bar_cat(free_category(integers(), 2), None, 1, verify=False).levels[1].n_gens == 25


def test_free_category_passes_axioms():
    assert free_category(cyclic_ring(2), 2).failure() == ""


def test_bad_composition_rejected():
    G = FGAbGroup.free(1)
    with pytest.raises(AxiomError):
        LinearCategory(1, {(0, 0): G}, {(0, 0, 0): [[{0: 2}]]}, {0: {0: 1}})


def _block(A, B):
    G = {0: A.group, 1: B.group}
    zero = FGAbGroup.trivial()
    homs = {(a, b): (G[a] if a == b else zero) for a in (0, 1) for b in (0, 1)}
    comp = {}
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                if a == b == c:
                    comp[(a, b, c)] = (A if a == 0 else B).mult
                else:
                    comp[(a, b, c)] = [[{} for _ in range(homs[(b, c)].n_gens)] for _ in range(homs[(a, b)].n_gens)]
    return LinearCategory(2, homs, comp, {0: A.unit, 1: B.unit})


def test_block_category_is_product_in_degree_zero():
    A, B = integers(), cyclic_ring(2)
    assert hh_cat(_block(A, B), max_degree=0).forms[0] == hh(product_algebra(A, B), max_degree=0).forms[0]


def test_one_object_hh_cat_matches_hh():
    A = dual_numbers()
    assert hh_cat(one_object(A), max_degree=2).forms == hh(A, max_degree=2).forms


@pytest.mark.parametrize("A", [integers(), cyclic_ring(2)], ids=["Z", "F2"])
def test_agreement(A):
    rep = agreement_check(A, 2, 2)
    assert rep.passed, str(rep)


def test_agreement_r1_is_tautological():
    assert agreement_check(dual_numbers(), 1, 2).passed


def test_augmented_bar_exact_on_free_category():
    F = free_category(integers(), 2)
    I = Functor.identity(F)
    rep = augmented_bar_check(F, I, I, 0, 1, T=3)
    assert rep.passed, str(rep)


def test_augmented_bar_one_object():
    C = one_object(integers())
    I = Functor.identity(C)
    assert augmented_bar_check(C, I, I, 0, 0, T=3).passed


def test_inclusion_hom_bimodule_is_functorial():
    Z = integers()
    F = free_category(Z, 2)
    assert hom_bimodule(inclusion(Z, F), Functor.identity(F)).failure() == ""
    assert canonical_bimodule(F).failure() == ""
