"""Hochschild homology through the cyclic bar construction, and the degree-0
shadow structure (cyclic swap, traces, Euler characteristics).

Level q of the cyclic bar construction is ``M ⊗ A^{⊗q}``.  Faces:
``d_0`` is the right action of the first algebra factor on M, ``d_i``
multiplies neighbouring algebra factors, and ``d_q`` moves the last factor
to the front and acts on M from the left.  Degeneracies insert the unit.
The Moore differential is the plain alternating sum of faces.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .chain import ChainComplex, format_homology
from .exact import AbHom, Element, FGAbGroup, IntMatrix, format_canonical, is_isomorphism
from .report import CheckReport
from .ringbimod import (
    Algebra,
    AlgebraHom,
    Bimodule,
    BimoduleHom,
    DualPairData,
    TensorOver,
    as_vec,
    insert,
    keyed,
    left_unitor,
    merge,
    right_unitor_inverse,
    tensor_hom_over,
    tensor_over,
    twist_left,
    unit_bimodule,
    check_dual_pair,
    check_morita,
)
from .simplicial import BisimplicialAb, SimplicialAb, levelwise_map_failures
from .words import WordSpace

DEFAULT_CEILING = 60000
CEILING_ENV = "HHSHADOW_MAX_GENERATORS"


class ResourceLimitError(RuntimeError):
    pass


class ConsistencyError(RuntimeError):
    pass


def generator_ceiling(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(CEILING_ENV)
    return int(env) if env else DEFAULT_CEILING


def guard(estimate: int, ceiling: int | None = None, what: str = "complex") -> None:
    cap = generator_ceiling(ceiling)
    if estimate > cap:
        raise ResourceLimitError(f"{what} needs about {estimate} generators, above the ceiling of {cap} (set {CEILING_ENV} to raise it)")


@dataclass
class HomologyReport:
    """Canonical forms of H_0 .. H_{max_degree}; the truncation used is kept so
    no degree beyond ``T - 1`` is ever reported."""

    forms: list
    truncation: int
    normalized: bool
    label: str = "HH"
    notes: dict = field(default_factory=dict)

    @property
    def max_degree(self) -> int:
        return len(self.forms) - 1

    def __getitem__(self, q: int):
        if q < 0 or q > self.truncation - 1:
            raise IndexError(f"degree {q} is not valid for truncation {self.truncation}")
        return self.forms[q]

    def strings(self) -> list[str]:
        return [format_canonical(*f) for f in self.forms]

    def __str__(self) -> str:
        return format_homology(enumerate(self.forms), self.label)

    def same_forms(self, other: "HomologyReport", upto: int | None = None) -> bool:
        k = min(self.max_degree, other.max_degree) if upto is None else upto
        return [tuple(f[0:1]) + (tuple(f[1]),) for f in self.forms[: k + 1]] == [tuple(f[0:1]) + (tuple(f[1]),) for f in other.forms[: k + 1]]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "truncation": self.truncation,
            "valid_through": self.truncation - 1,
            "normalized": self.normalized,
            "degrees": [{"degree": q, "free_rank": f[0], "torsion": list(f[1]), "group": format_canonical(*f)} for q, f in enumerate(self.forms)],
            **({"notes": self.notes} if self.notes else {}),
        }


def cyclic_bar(A: Algebra, M: Bimodule | None = None, T: int = 3, verify: bool = True) -> SimplicialAb:
    M = M or unit_bimodule(A)
    spaces = [WordSpace.single([M.group] + [A.group] * q) for q in range(T + 1)]

    def face(q, i):
        def f(key, t):
            if i == 0:
                return keyed(merge(t, 0, M.right))
            if i < q:
                return keyed(merge(t, i, A.mult))
            return keyed({(k,) + t[1:-1]: c for k, c in M.left[t[-1]][t[0]].items()})
        return spaces[q].map_to(spaces[q - 1], f)

    def degen(q, j):
        return spaces[q].map_to(spaces[q + 1], lambda key, t: keyed(insert(t, j + 1, A.unit)))

    levels = [s.group() for s in spaces]
    faces = [None] + [[face(q, i) for i in range(q + 1)] for q in range(1, T + 1)]
    degens = [[degen(q, j) for j in range(q + 1)] for q in range(T)]
    return SimplicialAb(levels, faces, degens, verify=verify, label="cyclic bar")


def cyclic_bar_size(A: Algebra, M: Bimodule | None, T: int) -> int:
    m = M.n if M is not None else A.n
    return sum(m * A.n ** q for q in range(T + 1))


def hh0_group(A: Algebra, M: Bimodule | None = None) -> FGAbGroup:
    """M / span{a·m - m·a} computed straight from the action tables."""
    M = M or unit_bimodule(A)
    cols = []
    for a in range(A.n):
        for m in range(M.n):
            c = dict(M.left[a][m])
            for k, v in M.right[m][a].items():
                s = c.get(k, 0) - v
                if s:
                    c[k] = s
                else:
                    c.pop(k, None)
            if c:
                cols.append(c)
    return FGAbGroup(M.n, M.group.relations.hstack(IntMatrix._trusted(M.n, len(cols), cols)))


def homology_report(X: SimplicialAb, max_degree: int, normalized: bool, label: str = "HH") -> tuple[HomologyReport, ChainComplex]:
    C = X.moore_complex(normalized=normalized)
    forms = [C.homology_canonical(q) for q in range(max_degree + 1)]
    return HomologyReport(forms, X.T, normalized, label), C


def hh(A: Algebra, M: Bimodule | None = None, max_degree: int = 2, normalized: bool = True, verify: bool = True, ceiling: int | None = None) -> HomologyReport:
    """HH_0 .. HH_{max_degree} of A with coefficients in M (default U_A)."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    T = max_degree + 1
    guard(cyclic_bar_size(A, M, T), ceiling, "cyclic bar construction")
    X = cyclic_bar(A, M, T, verify=verify)
    rep, _ = homology_report(X, max_degree, normalized)
    closed = hh0_group(A, M).canonical_form()
    if rep.forms[0] != closed:
        raise ConsistencyError(f"HH_0 from the complex ({format_canonical(*rep.forms[0])}) differs from the closed form ({format_canonical(*closed)})")
    rep.notes["hh0_closed_form"] = format_canonical(*closed)
    return rep


# -- bicyclic objects -----------------------------------------------------------

def bicyclic(P: Bimodule, C: Algebra, Q: Bimodule, D: Algebra, T: int, label: str = "") -> BisimplicialAb:
    """Levels ``P ⊗ C^p ⊗ Q ⊗ D^q`` for P a (D, C)- and Q a (C, D)-bimodule.

    The p-direction is the bar construction over C; the q-direction is the
    cyclic bar construction over D with coefficients in ``P ⊗ C^p ⊗ Q``.
    """
    spaces = {}

    def space(p, q):
        if (p, q) not in spaces:
            spaces[(p, q)] = WordSpace.single([P.group] + [C.group] * p + [Q.group] + [D.group] * q)
        return spaces[(p, q)]

    def group(p, q):
        return space(p, q).group()

    def hface(p, q, i):
        def f(key, t):
            if i == 0:
                return keyed(merge(t, 0, P.right))
            if i == p:
                return keyed(merge(t, p, Q.left))
            return keyed(merge(t, i, C.mult))
        return space(p, q).map_to(space(p - 1, q), f)

    def vface(p, q, j):
        base = p + 1

        def f(key, t):
            if j == 0:
                return keyed(merge(t, base, Q.right))
            if j < q:
                return keyed(merge(t, base + j, D.mult))
            return keyed({(k,) + t[1:-1]: c for k, c in P.left[t[-1]][t[0]].items()})
        return space(p, q).map_to(space(p, q - 1), f)

    def hdeg(p, q, j):
        return space(p, q).map_to(space(p + 1, q), lambda key, t: keyed(insert(t, j + 1, C.unit)))

    def vdeg(p, q, j):
        return space(p, q).map_to(space(p, q + 1), lambda key, t: keyed(insert(t, p + 2 + j, D.unit)))

    X = BisimplicialAb(T, group, hface, vface, hdeg, vdeg, label=label)
    X.space = space
    return X


def rotation(X: BisimplicialAb, Y: BisimplicialAb, shift: int = 0):
    """``(m, b_1..b_p, n, a_1..a_q) ↦ (n, a_1..a_q, m, b_1..b_p)`` as maps X_{p,q} -> Y_{q,p}.

    A nonzero ``shift`` cyclically moves the a-block, which is not a map of
    bisimplicial objects (used as a negative control).
    """
    def f(p, q):
        def g(key, t):
            head, tail = t[: p + 1], t[p + 1:]
            if shift and q:
                a = tail[1:]
                k = shift % q
                tail = (tail[0],) + a[-k:] + a[:-k]
            return {((), tail + head): 1}
        return X.space(p, q).map_to(Y.space(q, p), g)
    return f


def _diagonal_report(X: BisimplicialAb, T: int, label: str) -> HomologyReport:
    D = X.diagonal(T, verify=True)
    rep, _ = homology_report(D, T - 1, normalized=True, label=label)
    return rep


def bicyclic_swap_check(A: Algebra, B: Algebra, M: Bimodule, N: Bimodule, T: int = 3, shift: int = 0, check_identities: bool = True) -> CheckReport:
    """X = M⊗B^p⊗N⊗A^q against Y = N⊗A^p⊗M⊗B^q along the rotation X_{p,q} -> Y_{q,p}."""
    rep = CheckReport("bicyclic swap")
    X = bicyclic(M, B, N, A, T, "X")
    Y = bicyclic(N, A, M, B, T, "Y")
    if check_identities:
        for Z in (X, Y):
            bad = Z.identity_failures(first_only=True)
            rep.add(f"{Z.label} is bisimplicial through ({T},{T})", not bad, bad[0] if bad else "")
    f = rotation(X, Y, shift)
    non_iso = []
    for p in range(T + 1):
        for q in range(T + 1):
            if not is_isomorphism(f(p, q)):
                non_iso.append(f"({p},{q})")
    rep.add("rotation is an isomorphism at every bidegree", not non_iso, ", ".join(non_iso))
    bad = levelwise_map_failures(X, Y, f, transpose=True, T=T)
    rep.add("rotation commutes with all faces and degeneracies", not bad, "; ".join(bad[:6]))
    rep.data["failures"] = bad
    hx = _diagonal_report(X, T, "H(diag X)")
    hy = _diagonal_report(Y, T, "H(diag Y)")
    rep.add(f"diagonal homologies agree through degree {T - 1}", hx.forms == hy.forms, f"{hx} vs {hy}")
    rep.data["diagonal_X"] = hx.strings()
    rep.data["diagonal_Y"] = hy.strings()
    return rep


# -- degree-0 shadow ------------------------------------------------------------

def sh(A: Algebra, X: Bimodule) -> FGAbGroup:
    """The degree-0 shadow HH_0(A; X)."""
    return hh0_group(A, X)


def sh_map(f: BimoduleHom, A: Algebra) -> AbHom:
    """HH_0 of a bimodule map (checked to be well defined on the quotients)."""
    return AbHom(sh(A, f.source), sh(A, f.target), f.hom.matrix)


def theta(X: TensorOver, Y: TensorOver) -> AbHom:
    """Cyclic swap HH_0(A; M⊙N) -> HH_0(B; N⊙M), [m⊗n] ↦ [n⊗m]."""
    M, N = X.factors
    if Y.factors[0].n != N.n or Y.factors[1].n != M.n:
        raise ValueError("theta needs X = M⊙N and Y = N⊙M")
    cols = [{j * M.n + i: 1} for i in range(M.n) for j in range(N.n)]
    return AbHom(sh(M.left_algebra, X), sh(N.left_algebra, Y), IntMatrix._trusted(Y.n, X.n, cols))


def _same(f: AbHom, g: AbHom) -> tuple[bool, str]:
    k = (f - g).first_nonzero_generator()
    return k is None, "" if k is None else f"differs on generator {k}"


def shadow_coherence_check(M: Bimodule, N: Bimodule, P: Bimodule) -> CheckReport:
    """Hexagon and unit diagrams at degree 0 for M:(A,B), N:(B,C), P:(C,A)."""
    rep = CheckReport("shadow coherence (degree 0)")
    A = M.left_algebra
    MN = tensor_over(M, N)
    NP = tensor_over(N, P)
    PM = tensor_over(P, M)
    MN_P = tensor_over(MN, P)
    M_NP = tensor_over(M, NP)
    P_MN = tensor_over(P, MN)
    PM_N = tensor_over(PM, N)
    NP_M = tensor_over(NP, M)
    N_PM = tensor_over(N, PM)

    def assoc(src: TensorOver, tgt: TensorOver, alg: Algebra) -> AbHom:
        return AbHom(sh(alg, src), sh(alg, tgt), IntMatrix.identity(src.n))

    C = P.left_algebra
    B = N.left_algebra
    top = assoc(P_MN, PM_N, C) @ theta(MN_P, P_MN)
    bottom = theta(N_PM, PM_N) @ assoc(NP_M, N_PM, B) @ theta(M_NP, NP_M) @ assoc(MN_P, M_NP, A)
    ok, why = _same(top, bottom)
    rep.add("hexagon", ok, why)
    # unit diagram, for each rotated composite
    for name, X in (("(M⊙N)⊙P", MN_P), ("(N⊙P)⊙M", NP_M), ("(P⊙M)⊙N", PM_N)):
        alg = X.left_algebra
        U = unit_bimodule(alg)
        XU = tensor_over(X, U)
        UX = tensor_over(U, X)
        r = AbHom(sh(alg, XU), sh(alg, X), IntMatrix._trusted(X.n, XU.n, [X.right[m][a] for m in range(X.n) for a in range(alg.n)]))
        l = AbHom(sh(alg, UX), sh(alg, X), IntMatrix._trusted(X.n, UX.n, [X.left[a][m] for a in range(alg.n) for m in range(X.n)]))
        t1 = theta(XU, UX)
        t2 = theta(UX, XU)
        ok1, why1 = _same(l @ t1, r)
        ok2, why2 = _same(r @ t2, l)
        rep.add(f"unit triangle for {name}: l∘θ = r", ok1, why1)
        rep.add(f"unit triangle for {name}: r∘θ = l", ok2, why2)
        ok3, why3 = _same(t2 @ t1, AbHom.identity(sh(alg, XU)))
        rep.add(f"θ∘θ is the identity on HH_0({name}⊙U)", ok3, why3)
    return rep


def trace2cell(f: BimoduleHom, d: DualPairData, Q: Bimodule, P: Bimodule) -> AbHom:
    """Trace of ``f : Q⊙M -> M⊙P`` at degree 0: HH_0(A; Q) -> HH_0(B; P)."""
    M, N = d.M, d.N
    A, B = d.A, d.B
    UA, UB = unit_bimodule(A), unit_bimodule(B)
    MN = tensor_over(M, N)
    NM = tensor_over(N, M)
    QU = tensor_over(Q, UA)
    Q_MN = tensor_over(Q, MN)
    QM = tensor_over(Q, M)
    QM_N = tensor_over(QM, N)
    MP = tensor_over(M, P)
    MP_N = tensor_over(MP, N)
    N_MP = tensor_over(N, MP)
    NM_P = tensor_over(NM, P)
    U_P = tensor_over(UB, P)
    if f.source.group != QM.group or f.target.group != MP.group:
        raise ValueError("the 2-cell must go from Q⊙M to M⊙P")
    steps = [
        sh_map(right_unitor_inverse(Q, QU), A),
        sh_map(tensor_hom_over(BimoduleHom.identity(Q), d.coeval, QU, Q_MN), A),
        AbHom(sh(A, Q_MN), sh(A, QM_N), IntMatrix.identity(Q_MN.n)),
        sh_map(tensor_hom_over(BimoduleHom(QM, MP, f.hom, check=False), BimoduleHom.identity(N), QM_N, MP_N), A),
        theta(MP_N, N_MP),
        AbHom(sh(B, N_MP), sh(B, NM_P), IntMatrix.identity(N_MP.n)),
        sh_map(tensor_hom_over(d.eval, BimoduleHom.identity(P), NM_P, U_P), B),
        sh_map(left_unitor(P, U_P), B),
    ]
    out = steps[0]
    for s in steps[1:]:
        out = s @ out
    return out


def euler_characteristic(d: DualPairData, check: bool = True) -> AbHom:
    """χ(M) : HH_0(A) -> HH_0(B), the trace of the identity of M."""
    if check:
        rep = check_dual_pair(d)
        if not rep.passed:
            raise ValueError(f"not a dual pair: {rep.failures()[0].name}")
    M = d.M
    UA, UB = unit_bimodule(d.A), unit_bimodule(d.B)
    UM = tensor_over(UA, M)
    MU = tensor_over(M, UB)
    ident = right_unitor_inverse(M, MU) @ left_unitor(M, UM)
    return trace2cell(ident, d, UA, UB)


# -- Hattori-Stallings ------------------------------------------------------------

def _mat_mul(A: Algebra, X, Y):
    r, s, t = len(X), len(Y), len(Y[0]) if Y else 0
    out = [[{} for _ in range(t)] for _ in range(r)]
    for i in range(r):
        for j in range(t):
            acc = {}
            for k in range(s):
                for g, v in A.mul(X[i][k], Y[k][j]).items():
                    acc[g] = acc.get(g, 0) + v
            out[i][j] = {g: v for g, v in acc.items() if v}
    return out


def _mat_equal(A: Algebra, X, Y) -> bool:
    return all(A.equal(X[i][j], Y[i][j]) for i in range(len(X)) for j in range(len(X[0])))


def hattori_stallings(A: Algebra, phi: AlgebraHom | None, e, F) -> Element:
    """Class of Σ F_ii in HH_0(A; ^φA) = A / span{φ(a)·m - m·a}.

    ``e`` is an idempotent r×r matrix over A describing P = im(e) and F a
    matrix with e^φ F e = F (e^φ is φ applied entrywise)."""
    e = [[as_vec(x) for x in row] for row in e]
    F = [[as_vec(x) for x in row] for row in F]
    r = len(e)
    if any(len(row) != r for row in e) or len(F) != r or any(len(row) != r for row in F):
        raise ValueError("e and F must be square of the same size")
    if phi is None:
        from .ringbimod import AlgebraHom as _H
        phi = _H.identity(A)
    elif not phi.is_automorphism():
        raise ValueError("φ is not an automorphism")
    if not _mat_equal(A, _mat_mul(A, e, e), e):
        raise ValueError("e is not idempotent")
    ephi = [[phi(x) for x in row] for row in e]
    if not _mat_equal(A, _mat_mul(A, _mat_mul(A, ephi, F), e), F):
        raise ValueError("F does not satisfy e^φ F e = F")
    tr = {}
    for i in range(r):
        for g, v in F[i][i].items():
            tr[g] = tr.get(g, 0) + v
    G = hh0_group(A, twist_left(unit_bimodule(A), phi))
    return Element(G, tr)


def morita_hh_check(d: DualPairData, max_degree: int = 2, ceiling: int | None = None) -> CheckReport:
    """Morita equivalence of the pair, equal HH of both sides through
    ``max_degree``, and χ(M), χ(N) mutually inverse on HH_0."""
    rep = check_morita(d)
    ha = hh(d.A, max_degree=max_degree, ceiling=ceiling)
    hb = hh(d.B, max_degree=max_degree, ceiling=ceiling)
    rep.data["A"], rep.data["B"] = ha.strings(), hb.strings()
    for q in range(max_degree + 1):
        rep.add(f"HH_{q} agrees", ha.forms[q] == hb.forms[q], f"{ha.strings()[q]} vs {hb.strings()[q]}")
    if rep.passed:
        chi_m = euler_characteristic(d)
        chi_n = euler_characteristic(d.reversed())
        rep.add("χ(M) is an isomorphism on HH_0", is_isomorphism(chi_m))
        rep.add("χ(N)χ(M) is the identity", (chi_n @ chi_m - AbHom.identity(chi_m.source)).is_zero())
        rep.add("χ(M)χ(N) is the identity", (chi_m @ chi_n - AbHom.identity(chi_n.source)).is_zero())
    return rep
