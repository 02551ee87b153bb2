import pytest
from hypothesis import given, strategies as st

from hhshadow.chain import ChainComplex
from hhshadow.exact import (
    AbHom,
    FGAbGroup,
    IntMatrix,
    WellDefinednessError,
    cokernel,
    direct_sum,
    format_canonical,
    image,
    inverse,
    is_isomorphism,
    kernel,
    smith_decompose,
    smith_normal_form,
    tensor,
)
from oracles import cokernel_form, free_homology, invariant_factors


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def det(M):
    from sympy import Matrix
    return Matrix(M.to_rows()).det()


@given(matrices())
def test_smith_diagonal_matches_sympy(rows):
    U, D, V = smith_normal_form(IntMatrix.from_rows(rows))
    assert [d for d in D.diagonal() if d] == invariant_factors(rows)


@given(matrices())
def test_smith_transforms_are_unimodular(rows):
    m = IntMatrix.from_rows(rows)
    s = smith_decompose(m)
    assert s.U @ m @ s.V == s.D
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    assert s.U @ s.Uinv == IntMatrix.identity(m.rows)
    assert s.V @ s.Vinv == IntMatrix.identity(m.cols)


@given(matrices())
def test_smith_divisibility_chain(rows):
    diag = smith_decompose(IntMatrix.from_rows(rows)).diag
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_smith_known_example():
    U, D, V = smith_normal_form(IntMatrix.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]))
    assert D.diagonal()[:3] == [1, 10, 30]


def test_zero_and_empty_matrices():
    assert smith_decompose(IntMatrix.zeros(3, 2)).diag == ()
    assert smith_decompose(IntMatrix.zeros(0, 0)).diag == ()
    assert FGAbGroup(0).canonical_form() == (0, [])


@given(matrices())
def test_group_canonical_form_matches_cokernel_oracle(rows):
    n = len(rows)
    G = FGAbGroup(n, IntMatrix.from_rows(rows))
    assert G.canonical_form() == cokernel_form(rows, n)


@pytest.mark.parametrize("orders, expected", [
    ([2, 3], (0, [6])),
    ([4, 6], (0, [2, 12])),
    ([0, 2, 0], (2, [2])),
    ([1, 1], (0, [])),
])
def test_canonical_form_of_cyclic_sums(orders, expected):
    assert FGAbGroup.from_orders(orders).canonical_form() == expected


def test_format_canonical():
    assert format_canonical(0, []) == "0"
    assert format_canonical(2, []) == "Z^2"
    assert format_canonical(1, [2]) == "Z + Z/2"


def test_hom_rejects_ill_defined_maps():
    with pytest.raises(WellDefinednessError):
        AbHom(FGAbGroup.cyclic(2), FGAbGroup.free(1), [[1]])
    AbHom(FGAbGroup.cyclic(2), FGAbGroup.cyclic(4), [[2]])


def test_kernel_image_cokernel_of_doubling_on_z4():
    G = FGAbGroup.cyclic(4)
    f = AbHom(G, G, [[2]])
    assert kernel(f)[0].canonical_form() == (0, [2])
    assert image(f)[0].canonical_form() == (0, [2])
    assert cokernel(f)[0].canonical_form() == (0, [2])


@given(st.integers(0, 12), st.integers(0, 12))
def test_tensor_of_cyclic_groups(a, b):
    from math import gcd
    G = tensor(FGAbGroup.from_orders([a]), FGAbGroup.from_orders([b]))
    g = gcd(a, b)
    expected = (1, []) if g == 0 else (0, [g] if g > 1 else [])
    assert G.canonical_form() == expected


@given(st.lists(st.integers(0, 6), min_size=1, max_size=3), st.lists(st.integers(0, 6), min_size=1, max_size=3))
def test_direct_sum_splits(a, b):
    G, H = FGAbGroup.from_orders(a), FGAbGroup.from_orders(b)
    S, inj, proj = direct_sum(G, H)
    assert (proj[0] @ inj[0] - AbHom.identity(G)).is_zero()
    assert (proj[1] @ inj[0]).is_zero()
    fG, tG = G.canonical_form()
    fH, tH = H.canonical_form()
    assert S.canonical_form() == FGAbGroup.from_orders([0] * (fG + fH) + tG + tH).canonical_form()


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), max_size=6))
def test_unimodular_inverse(ops):
    n = 3
    M = IntMatrix.identity(n)
    for i, j, k in ops:
        if i != j:
            E = IntMatrix.from_rows([[1 if r == c else (k if (r, c) == (i, j) else 0) for c in range(n)] for r in range(n)])
            M = E @ M
    G = FGAbGroup.free(n)
    f = AbHom(G, G, M)
    assert is_isomorphism(f)
    assert (inverse(f) @ f - AbHom.identity(G)).is_zero()


def test_element_normal_forms_identify_equal_classes():
    G = FGAbGroup.from_orders([0, 6])
    assert G.element([1, 7]) == G.element([1, 1])
    assert (6 * G.element([0, 1])).is_zero()
    assert not (3 * G.element([0, 1])).is_zero()


@given(st.lists(matrices(3, 3, -3, 3), min_size=1, max_size=1), st.integers(0, 2))
def test_chain_homology_matches_oracle(ms, q):
    # a complex Z^3 <- Z^3 <- Z^3 built as d1 and d2 = d1-compatible product
    a = IntMatrix.from_rows(ms[0], ncols=len(ms[0][0]))
    n = a.rows
    k = a.cols
    # d2 : Z^k -> Z^n is a, d1 : Z^n -> Z^1 is a row killing the image of a
    from sympy import Matrix
    ker = Matrix(ms[0]).T.nullspace()
    row = [0] * n
    if ker:
        from sympy import ilcm
        v = ker[0]
        den = ilcm(*[x.q for x in v]) if len(v) > 1 else v[0].q
        row = [int(x * den) for x in v]
    d1 = IntMatrix.from_rows([row], ncols=n)
    C = ChainComplex([FGAbGroup.free(1), FGAbGroup.free(n), FGAbGroup.free(k)],
                     [AbHom(FGAbGroup.free(n), FGAbGroup.free(1), d1), AbHom(FGAbGroup.free(k), FGAbGroup.free(n), a)],
                     truncated=False)
    assert C.homology_canonical(1) == free_homology([row], ms[0], n)


def test_truncated_complex_refuses_top_degree():
    G = FGAbGroup.free(1)
    C = ChainComplex([G, G], [AbHom(G, G, [[0]])])
    assert C.homology_canonical(0) == (1, [])
    with pytest.raises(ValueError):
        C.homology_canonical(1)
