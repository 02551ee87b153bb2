"""Cyclic invariance of Hochschild homology of Green functors at the top level.

For an (R, S)-bimodule M and an (S, R)-bimodule N the check compares
``HH_j(R; M □_S N)(C_m)`` with ``HH_j(S; N □_R M)(C_m)`` by three routes:

* the homology Mackey functors of both twisted cyclic nerves,
* the bicyclic objects ``^gM □ S^p □ N □ R^q`` and ``^gN □ R^q □ M □ S^p``
  at the top level, related by the rotation
  ``[m ⊗ s ⊗ n ⊗ r]_d ↦ [n ⊗ r ⊗ g⁻¹m ⊗ g⁻¹s]_d``,
* in degree 0, the map ``θ[x ⊗ y]_d = [g(y) ⊗ x]_d`` between the closed-form
  quotients, whose square is the identity because the Weyl action is
  trivial after passing to coinvariants at the top level.
"""

from __future__ import annotations

from ..exact import AbHom, IntMatrix, is_isomorphism
from ..report import CheckReport
from ..ringbimod import column_module, insert, keyed, matrix_algebra, merge, row_module
from ..simplicial import BisimplicialAb, levelwise_map_failures
from ..words import expand
from .box import BoxProduct, relative_box
from .functor import GreenBimodule, GreenFunctor, MackeyFunctor, covering_pairs
from .nerve import hh0_closed_form, mackey_hh


def _entrywise(f, copies: int) -> IntMatrix:
    return IntMatrix.block_diag(*([f.matrix] * copies))


def matrix_green(R: GreenFunctor, r: int = 2):
    """Levelwise M_r(R) with entrywise structure maps, and the row (R, M_r R)-
    and column (M_r R, R)-bimodules.  Returns (S, rows, columns)."""
    m = R.m
    algs = {d: matrix_algebra(R.algebra(d), r) for d in R.divisors}
    res = {(e, d): _entrywise(R.res(e, d), r * r) for e, d in covering_pairs(m)}
    tr = {(d, e): _entrywise(R.tr(d, e), r * r) for e, d in covering_pairs(m)}
    weyl = {d: _entrywise(R.weyl(d), r * r) for d in R.divisors}
    S = GreenFunctor(MackeyFunctor(m, {d: algs[d].group for d in R.divisors}, res, tr, weyl, name=f"M{r}({R.name})"), algs)
    rows, cols = {}, {}
    for d in R.divisors:
        rows[d] = row_module(R.algebra(d), r, algs[d])
        cols[d] = column_module(R.algebra(d), r, algs[d])
    vec = MackeyFunctor(
        m,
        {d: rows[d].group for d in R.divisors},
        {(e, d): _entrywise(R.res(e, d), r) for e, d in covering_pairs(m)},
        {(d, e): _entrywise(R.tr(d, e), r) for e, d in covering_pairs(m)},
        {d: _entrywise(R.weyl(d), r) for d in R.divisors},
        name=f"{R.name}^{r}",
    )
    M = GreenBimodule(R, S, vec, {d: rows[d].left for d in R.divisors}, {d: rows[d].right for d in R.divisors}, name="row")
    N = GreenBimodule(S, R, vec, {d: cols[d].left for d in R.divisors}, {d: cols[d].right for d in R.divisors}, name="col")
    return S, M, N


def green_bicyclic(P: GreenBimodule, C: GreenFunctor, Q: GreenBimodule, D: GreenFunctor, T: int, label: str = "") -> BisimplicialAb:
    """Top level of ``^gP □ C^{□p} □ Q □ D^{□q}``; P is a (D, C)- and Q a (C, D)-bimodule.

    The p-direction is the bar construction over C and the q-direction the
    twisted cyclic bar construction over D."""
    m = C.m
    boxes = {}

    def box_at(p, q):
        if (p, q) not in boxes:
            boxes[(p, q)] = BoxProduct([P.mackey] + [C.mackey] * p + [Q.mackey] + [D.mackey] * q, check=False)
        return boxes[(p, q)]

    def space(p, q):
        return box_at(p, q).space(m)

    def group(p, q):
        return box_at(p, q).level(m)

    def hface(p, q, i):
        def f(d, t):
            if i == 0:
                return keyed(merge(t, 0, P.bimodule(d).right), d)
            if i == p:
                return keyed(merge(t, p, Q.bimodule(d).left), d)
            return keyed(merge(t, i, C.algebra(d).mult), d)
        return space(p, q).map_to(space(p - 1, q), f, source_group=group(p, q), target_group=group(p - 1, q))

    def vface(p, q, j):
        base = p + 1

        def f(d, t):
            if j == 0:
                return keyed(merge(t, base, Q.bimodule(d).right), d)
            if j < q:
                return keyed(merge(t, base + j, D.algebra(d).mult), d)
            g = D.weyl(d).matrix.column(t[-1])
            return keyed({(x,) + t[1:-1]: c for x, c in P.bimodule(d).act_left(g, {t[0]: 1}).items()}, d)
        return space(p, q).map_to(space(p, q - 1), f, source_group=group(p, q), target_group=group(p, q - 1))

    def hdeg(p, q, j):
        return space(p, q).map_to(space(p + 1, q), lambda d, t: keyed(insert(t, j + 1, C.algebra(d).unit), d), source_group=group(p, q), target_group=group(p + 1, q))

    def vdeg(p, q, j):
        return space(p, q).map_to(space(p, q + 1), lambda d, t: keyed(insert(t, p + 2 + j, D.algebra(d).unit), d), source_group=group(p, q), target_group=group(p, q + 1))

    X = BisimplicialAb(T, group, hface, vface, hdeg, vdeg, label=label)
    X.space = space
    return X


def green_rotation(X, Y, M: GreenBimodule, S: GreenFunctor, weyl: bool = True):
    """``[m ⊗ s_1..s_p ⊗ n ⊗ r_1..r_q]_d ↦ [n ⊗ r_1..r_q ⊗ g⁻¹m ⊗ g⁻¹s_1..g⁻¹s_p]_d``.

    With ``weyl`` unset the g⁻¹ is dropped, which is not compatible with the
    faces once the Weyl action is nontrivial."""

    def f(p, q):
        def g(d, t):
            head, tail = t[: p + 1], t[p + 1:]
            parts = [{x: 1} for x in tail]
            k = -1 if weyl else 0
            parts.append(M.mackey.weyl(d, k).matrix.column(head[0]))
            w = S.weyl(d, k).matrix
            parts += [w.column(s) for s in head[1:]]
            return {(d, t2): c for t2, c in expand(parts).items()}
        return X.space(p, q).map_to(Y.space(q, p), g, source_group=X.group(p, q), target_group=Y.group(q, p))
    return f


def theta_top(R: GreenFunctor, P, Q, M: GreenBimodule, N: GreenBimodule) -> AbHom:
    """θ on HH_0 at the top level: [x ⊗ y]_d ↦ [g(y) ⊗ x]_d."""
    m = R.m
    src = hh0_closed_form(R, P, m)
    tgt = hh0_closed_form(Q.R, Q, m)
    SP, SQ = P.box.space(m), Q.box.space(m)
    cols = []
    for d, t in SP.basis():
        x, y = t
        col = {}
        for y2, c in N.mackey.weyl(d).matrix.column(y).items():
            i = SQ.index(d, (y2, x))
            col[i] = col.get(i, 0) + c
        cols.append({i: v for i, v in col.items() if v})
    return AbHom(src, tgt, IntMatrix._trusted(tgt.n_gens, SP.dim, cols))


def green_shadow_check(R: GreenFunctor, S: GreenFunctor, M: GreenBimodule, N: GreenBimodule, k: int = 0, bicyclic: bool = True) -> CheckReport:
    rep = CheckReport(f"shadow of Green functors at C_{R.m}/C_{R.m}, degrees <= {k}")
    P = relative_box(M, N)
    Q = relative_box(N, M)
    HR = mackey_hh(R, P, k)
    HS = mackey_hh(S, Q, k)
    rep.data["R_side"] = [h.top().canonical_form() for h in HR]
    rep.data["S_side"] = [h.top().canonical_form() for h in HS]
    for j in range(k + 1):
        a, b = HR[j].top(), HS[j].top()
        rep.add(f"HH_{j} at the top level", a.isomorphic(b), f"{a} vs {b}")
    try:
        th = theta_top(R, P, Q, M, N)
        th2 = theta_top(S, Q, P, N, M)
    except ValueError as exc:
        rep.add("θ is well defined in degree 0", False, str(exc))
    else:
        rep.add("θ is well defined in degree 0", True)
        rep.add("θ is an isomorphism", is_isomorphism(th))
        rep.add("θ'θ is the identity", (th2 @ th - AbHom.identity(th.source)).is_zero())
        rep.add("θθ' is the identity", (th @ th2 - AbHom.identity(th2.source)).is_zero())
    if bicyclic:
        T = k + 1
        X = green_bicyclic(M, S, N, R, T, "X")
        Y = green_bicyclic(N, R, M, S, T, "Y")
        for name, Z in (("X", X), ("Y", Y)):
            bad = Z.identity_failures(first_only=True)
            rep.add(f"bisimplicial identities of {name}", not bad, bad[0] if bad else "")
        rot = green_rotation(X, Y, M, S)
        bad = levelwise_map_failures(X, Y, rot, transpose=True, T=T)
        rep.add("rotation commutes with all faces and degeneracies", not bad, bad[0] if bad else "")
        iso = all(is_isomorphism(rot(p, q)) for p in range(T + 1) for q in range(T + 1))
        rep.add("rotation is levelwise an isomorphism", iso)
        DX = X.diagonal(T).moore_complex()
        DY = Y.diagonal(T).moore_complex()
        fx = [DX.homology_canonical(j) for j in range(k + 1)]
        fy = [DY.homology_canonical(j) for j in range(k + 1)]
        rep.data["diagonal_X"], rep.data["diagonal_Y"] = fx, fy
        rep.add("diagonal homologies agree", fx == fy)
    return rep
