"""Algebras and bimodules carrying automorphisms, and twisted Hochschild homology.

For an algebra A with automorphism φ and an A-bimodule M, the twisted
Hochschild homology is ``HH(A; ^φM)``, where ``^φM`` has its left action
precomposed with φ.  The structure map γ of a twisted bimodule is only used
by the isomorphisms relating different twisted theories.
"""

from __future__ import annotations

from .exact import AbHom, IntMatrix, is_isomorphism
from .hochschild import (
    HomologyReport,
    bicyclic,
    guard,
    hh,
    hh0_group,
    homology_report,
    rotation,
)
from .report import CheckReport
from .ringbimod import (
    Algebra,
    AlgebraHom,
    AxiomError,
    Bimodule,
    DualPairData,
    TensorOver,
    bar_resolution,
    check_morita,
    reduce_bimodule,
    tensor_over,
    twist_left,
    unit_bimodule,
)
from .simplicial import levelwise_map_failures


class TwistedAlgebra:
    def __init__(self, algebra: Algebra, phi: AlgebraHom | None = None):
        phi = phi or AlgebraHom.identity(algebra)
        if phi.source.group != algebra.group or phi.target.group != algebra.group:
            raise ValueError("automorphism must act on the algebra")
        if not phi.is_automorphism():
            raise AxiomError("twisting map is not invertible")
        self.algebra = algebra
        self.phi = phi

    @property
    def A(self) -> Algebra:
        return self.algebra

    def unit(self) -> "TwistedBimodule":
        """U_A with φ as its structure map."""
        return TwistedBimodule(unit_bimodule(self.algebra), self, self, self.phi.hom)


class TwistedBimodule:
    """An (A, B)-bimodule M with an invertible γ : M -> M such that
    γ(a·m) = φ(a)·γ(m) and γ(m·b) = γ(m)·ψ(b)."""

    def __init__(self, module: Bimodule, left: TwistedAlgebra, right: TwistedAlgebra, gamma: AbHom | None = None, check: bool = True):
        self.module = module
        self.left = left
        self.right = right
        if gamma is None:
            gamma = AbHom.identity(module.group)
        elif not isinstance(gamma, AbHom):
            gamma = AbHom(module.group, module.group, gamma)
        self.gamma = gamma
        if check:
            bad = self.failure()
            if bad:
                raise AxiomError(bad)

    def failure(self) -> str:
        M, g = self.module, self.gamma
        if not is_isomorphism(g):
            return "γ is not invertible"
        phi, psi = self.left.phi, self.right.phi
        for m in range(M.n):
            gm = g.matrix.column(m)
            for a in range(M.left_algebra.n):
                if not M.equal(g.matrix.apply(M.left[a][m]), M.act_left(phi.image(a), gm)):
                    return f"γ does not intertwine the left action on (a{a}, m{m})"
            for b in range(M.right_algebra.n):
                if not M.equal(g.matrix.apply(M.right[m][b]), M.act_right(gm, psi.image(b))):
                    return f"γ does not intertwine the right action on (m{m}, b{b})"
        return ""

    def negated(self) -> "TwistedBimodule":
        return TwistedBimodule(self.module, self.left, self.right, -self.gamma, check=False)


def twisted_tensor(M: TwistedBimodule, N: TwistedBimodule) -> TwistedBimodule:
    """M ⊙ N with the diagonal structure map γ_M ⊗ γ_N."""
    X = tensor_over(M.module, N.module)
    g = AbHom(X.group, X.group, M.gamma.matrix.kron(N.gamma.matrix))
    return TwistedBimodule(X, M.left, N.right, g, check=False)


def hh_twisted(TA: TwistedAlgebra, TM: TwistedBimodule | None = None, max_degree: int = 2, normalized: bool = True, ceiling: int | None = None) -> HomologyReport:
    """HH^φ(A; M) = HH(A; ^φM); unit coefficients by default."""
    M = TM.module if TM is not None else unit_bimodule(TA.algebra)
    rep = hh(TA.algebra, twist_left(M, TA.phi), max_degree, normalized=normalized, ceiling=ceiling)
    rep.label = "HH^phi"
    return rep


def twisted_hh0(TA: TwistedAlgebra, M: Bimodule | None = None):
    """Closed form M / span{φ(a)·m - m·a}."""
    M = M or unit_bimodule(TA.algebra)
    return hh0_group(TA.algebra, twist_left(M, TA.phi))


def _twist_bimodule(M: Bimodule, left: AlgebraHom | None = None, right: AlgebraHom | None = None) -> Bimodule:
    from .ringbimod import twist_right
    if left is not None:
        M = twist_left(M, left)
    if right is not None:
        M = twist_right(M, right)
    return M


def _levelwise_isos(X, Y, f, T: int, transpose: bool) -> list[str]:
    bad = []
    for p in range(T + 1):
        for q in range(T + 1):
            if not is_isomorphism(f(p, q)):
                bad.append(f"({p},{q})")
    return bad


def twisted_cyclic_iso_check(TA: TwistedAlgebra, TB: TwistedAlgebra, TM: TwistedBimodule, TN: TwistedBimodule, T: int = 3) -> CheckReport:
    """Relates ``^φM ⊗ B^p ⊗ N ⊗ A^q`` to ``^ψN ⊗ A^p ⊗ M ⊗ B^q`` in three levelwise steps:
    the rotation, φ on every A factor, and γ_N on the N factor."""
    rep = CheckReport("twisted cyclic isomorphism")
    A, B = TA.algebra, TB.algebra
    phi, psi = TA.phi, TB.phi
    M, N = TM.module, TN.module
    phiM = twist_left(M, phi)
    N_inv = _twist_bimodule(N, right=phi.inverse())
    psiN = twist_left(N, psi)
    X = bicyclic(phiM, B, N, A, T, "X")
    X1 = bicyclic(N, A, phiM, B, T, "X'")
    X2 = bicyclic(N_inv, A, M, B, T, "X''")
    Y = bicyclic(psiN, A, M, B, T, "Y")
    for Z in (X, Y):
        bad = Z.identity_failures(first_only=True)
        rep.add(f"{Z.label} is bisimplicial through ({T},{T})", not bad, bad[0] if bad else "")

    step1 = rotation(X, X1)
    phi_m = phi.hom.matrix

    def step2(p, q):
        def g(key, t):
            out = {t[:1]: 1}
            for a in t[1 : p + 1]:
                nxt = {}
                for w, c in out.items():
                    for k, v in phi_m.column(a).items():
                        nxt[w + (k,)] = nxt.get(w + (k,), 0) + c * v
                out = nxt
            return {((), w + t[p + 1 :]): c for w, c in out.items() if c}
        return X1.space(p, q).map_to(X2.space(p, q), g)

    gam = TN.gamma.matrix

    def step3(p, q):
        def g(key, t):
            return {((), (k,) + t[1:]): v for k, v in gam.column(t[0]).items()}
        return X2.space(p, q).map_to(Y.space(p, q), g)

    for name, S, Tg, f, tr in (("rotation", X, X1, step1, True), ("φ on the A factors", X1, X2, step2, False), ("γ_N", X2, Y, step3, False)):
        noniso = _levelwise_isos(S, Tg, f, T, tr)
        rep.add(f"{name}: isomorphism at every bidegree", not noniso, ", ".join(noniso))
        bad = levelwise_map_failures(S, Tg, f, transpose=tr, T=T)
        rep.add(f"{name}: commutes with faces and degeneracies", not bad, "; ".join(bad[:6]))

    hx, _ = homology_report(X.diagonal(T), T - 1, normalized=True, label="H(diag X)")
    hy, _ = homology_report(Y.diagonal(T), T - 1, normalized=True, label="H(diag Y)")
    rep.add(f"diagonal homologies agree through degree {T - 1}", hx.forms == hy.forms, f"{hx} vs {hy}")
    rep.data["diagonal_X"] = hx.strings()
    rep.data["diagonal_Y"] = hy.strings()
    return rep


def twisted_theta(TM: TwistedBimodule, TN: TwistedBimodule, X: TensorOver | None = None, Y: TensorOver | None = None) -> AbHom:
    """HH^φ_0(A; M⊙N) -> HH^ψ_0(B; N⊙M), [m⊗n] ↦ [γ_N(n)⊗m]."""
    M, N = TM.module, TN.module
    X = X or tensor_over(M, N)
    Y = Y or tensor_over(N, M)
    gam = TN.gamma.matrix
    cols = []
    for i in range(M.n):
        for j in range(N.n):
            cols.append({k * M.n + i: v for k, v in gam.column(j).items()})
    src = twisted_hh0(TM.left, X)
    tgt = twisted_hh0(TN.left, Y)
    return AbHom(src, tgt, IntMatrix._trusted(Y.n, X.n, cols))


def equivariance_failures(d: DualPairData, TM: TwistedBimodule, TN: TwistedBimodule) -> list[str]:
    """coeval∘φ = (γ_M⊗γ_N)∘coeval and eval∘(γ_N⊗γ_M) = ψ∘eval on generators."""
    bad = []
    phi, psi = TM.left.phi.hom.matrix, TM.right.phi.hom.matrix
    gmn = TM.gamma.matrix.kron(TN.gamma.matrix)
    gnm = TN.gamma.matrix.kron(TM.gamma.matrix)
    co = d.coeval.hom
    k = AbHom(co.source, co.target, gmn @ co.matrix - co.matrix @ phi, check=False).first_nonzero_generator()
    if k is not None:
        bad.append(f"coeval is not equivariant on generator {k}")
    ev = d.eval.hom
    k = AbHom(ev.source, ev.target, ev.matrix @ gnm - psi @ ev.matrix, check=False).first_nonzero_generator()
    if k is not None:
        bad.append(f"eval is not equivariant on generator {k}")
    return bad


def twisted_euler_characteristic(d: DualPairData, TM: TwistedBimodule, TN: TwistedBimodule) -> AbHom:
    """HH^φ_0(A) -> HH^ψ_0(B): coeval, then the twisted swap, then eval."""
    TA, TB = TM.left, TM.right
    MN = tensor_over(d.M, d.N)
    NM = tensor_over(d.N, d.M)
    co = AbHom(twisted_hh0(TA), twisted_hh0(TA, MN), d.coeval.hom.matrix)
    th = twisted_theta(TM, TN, MN, NM)
    ev = AbHom(twisted_hh0(TB, NM), twisted_hh0(TB), d.eval.hom.matrix)
    return ev @ th @ co


def _tor_vanishing(M: Bimodule, C: Algebra, N: Bimodule, T: int) -> tuple[bool, str]:
    guard(sum(M.n * N.n * C.n ** p for p in range(T + 1)), None, "bar construction")
    X = bar_resolution(M, C, N, T)
    ch = X.moore_complex(normalized=True)
    forms = [ch.homology_canonical(q) for q in range(1, T)]
    ok = all(f == (0, []) for f in forms)
    return ok, ", ".join(f"H_{q + 1} = {f}" for q, f in enumerate(forms))


def twisted_morita_check(d: DualPairData, TM: TwistedBimodule, TN: TwistedBimodule, Q: TwistedBimodule | None = None, max_degree: int = 2) -> CheckReport:
    """HH^φ(A; Q) against HH^ψ(B; N⊙Q⊙M) in degrees <= max_degree, plus the
    twisted Euler characteristic in degree 0.

    The composite N⊙Q⊙M is the underived tensor product; the report includes
    a certificate that the relevant bar constructions have no higher homology
    through the degrees compared, so it agrees with the derived one there."""
    rep = CheckReport("twisted Morita invariance")
    TA, TB = TM.left, TM.right
    for name, tb in (("M", TM), ("N", TN)):
        bad = tb.failure()
        rep.add(f"{name} is a twisted bimodule", not bad, bad)
    rep.extend(check_morita(d), "")
    bad = equivariance_failures(d, TM, TN)
    rep.add("structure maps are equivariant", not bad, "; ".join(bad))
    if not rep.passed:
        return rep
    Q = Q or TA.unit()
    T = max_degree + 1
    ok, detail = _tor_vanishing(d.N, TA.algebra, Q.module, T)
    rep.add(f"N ⊗_A Q has no higher Tor through degree {max_degree}", ok, detail)
    NQ, _ = reduce_bimodule(tensor_over(d.N, Q.module))
    ok, detail = _tor_vanishing(NQ, TA.algebra, d.M, T)
    rep.add(f"(N⊙Q) ⊗_A M has no higher Tor through degree {max_degree}", ok, detail)
    NQM, _ = reduce_bimodule(tensor_over(NQ, d.M))
    left = hh(TA.algebra, twist_left(Q.module, TA.phi), max_degree)
    right = hh(TB.algebra, twist_left(NQM, TB.phi), max_degree)
    left.label, right.label = "HH^phi(A;Q)", "HH^psi(B;NQM)"
    rep.add(f"homology agrees through degree {max_degree}", left.forms == right.forms, f"{left} vs {right}")
    rep.data["source"] = left.strings()
    rep.data["target"] = right.strings()
    chi = twisted_euler_characteristic(d, TM, TN)
    rep.add("twisted Euler characteristic is an isomorphism", is_isomorphism(chi), str(chi.source) + " -> " + str(chi.target))
    return rep


def matrix_twisted_pair(TA: TwistedAlgebra, r: int):
    """The row/column pair between (A, φ) and (M_r(A), entrywise φ), with
    entrywise structure maps."""
    from .ringbimod import matrix_algebra, matrix_automorphism, matrix_morita_pair
    A = TA.algebra
    B = matrix_algebra(A, r)
    TB = TwistedAlgebra(B, matrix_automorphism(TA.phi, r, B))
    d = matrix_morita_pair(A, r, B)
    phi = TA.phi.hom.matrix
    g = IntMatrix.block_diag(*([phi] * r))
    TM = TwistedBimodule(d.M, TA, TB, AbHom(d.M.group, d.M.group, g))
    TN = TwistedBimodule(d.N, TB, TA, AbHom(d.N.group, d.N.group, g))
    return d, TB, TM, TN
