"""Family sub-functors, the quotient by them, and geometric fixed points.

For N | m the family F_N consists of the subgroups C_d with N not dividing d.
``ef_sub(M, N)`` is the sub-Mackey functor generated by the levels in F_N and
``etilde(M, N)`` the quotient; ``etilde(burnside(m), N)`` is the Green functor
written ẼF_N(A) below.  For a prime p dividing m, ``Φ_p M`` is the Mackey
functor over C_{m/p} with level d equal to ``etilde(M, p)`` at level p·d.
"""

from __future__ import annotations

from ..exact import AbHom, FGAbGroup, IntMatrix, is_isomorphism
from ..exact.abelian import kernel, solve_in_lattice
from ..report import CheckReport
from ..ringbimod import Algebra
from .box import BoxProduct, box
from .functor import (
    GreenFunctor,
    MackeyFunctor,
    MackeyHom,
    _Sub,
    burnside,
    burnside_index,
    covering_pairs,
    divisors,
)


def _mackey(F) -> MackeyFunctor:
    return F.mackey if hasattr(F, "mackey") else F


def _in_span(G: FGAbGroup, gens: list, v: dict) -> bool:
    lat = IntMatrix._trusted(G.n_gens, len(gens), list(gens)).hstack(G.relations)
    return solve_in_lattice(lat, [v]) is not None


def closure(M: MackeyFunctor, gens: dict) -> dict:
    """Smallest sub-Mackey functor containing the given vectors, as generating
    vectors per level."""
    M = _mackey(M)
    out = {d: [dict(v) for v in gens.get(d, []) if v] for d in M.divisors}
    changed = True
    while changed:
        changed = False
        cand = []
        for e, d in covering_pairs(M.m):
            cand += [(d, M.tr(d, e).matrix.apply(v)) for v in out[e]]
            cand += [(e, M.res(e, d).matrix.apply(v)) for v in out[d]]
        for d in M.divisors:
            cand += [(d, M.weyl(d).matrix.apply(v)) for v in out[d]]
        for d, v in cand:
            if v and not _in_span(M.level(d), out[d], v):
                out[d].append(v)
                changed = True
    return out


def family_generators(M: MackeyFunctor, N: int) -> dict:
    M = _mackey(M)
    if M.m % N:
        raise ValueError(f"{N} does not divide {M.m}")
    gens = {d: [{i: 1} for i in range(M.level(d).n_gens)] if d % N else [] for d in M.divisors}
    return closure(M, gens)


def sub_functor(M: MackeyFunctor, gens: dict, name: str = "") -> MackeyFunctor:
    M = _mackey(M)
    subs = {}
    for d in M.divisors:
        V = M.level(d)
        vecs = gens[d]
        basis = IntMatrix._trusted(V.n_gens, len(vecs), list(vecs))
        _, inc = kernel(AbHom(FGAbGroup.free(len(vecs)), V, basis))
        subs[d] = _Sub(V, basis, FGAbGroup(len(vecs), inc.matrix))
    res, tr, weyl = {}, {}, {}
    for e, d in covering_pairs(M.m):
        res[(e, d)] = subs[e].matrix_of([M.res(e, d).matrix.apply(v) for v in gens[d]], len(gens[e]))
        tr[(d, e)] = subs[d].matrix_of([M.tr(d, e).matrix.apply(v) for v in gens[e]], len(gens[d]))
    for d in M.divisors:
        weyl[d] = subs[d].matrix_of([M.weyl(d).matrix.apply(v) for v in gens[d]], len(gens[d]))
    return MackeyFunctor(M.m, {d: s.group for d, s in subs.items()}, res, tr, weyl, name=name)


def quotient_functor(M: MackeyFunctor, gens: dict, name: str = "") -> MackeyFunctor:
    """M modulo a sub-functor; the structure maps are reused and their
    well-definedness on the quotient is checked."""
    M = _mackey(M)
    levels = {}
    for d in M.divisors:
        V = M.level(d)
        extra = IntMatrix._trusted(V.n_gens, len(gens[d]), list(gens[d]))
        levels[d] = FGAbGroup(V.n_gens, V.relations.hstack(extra))
    res = {(e, d): M.res(e, d).matrix for e, d in covering_pairs(M.m)}
    tr = {(d, e): M.tr(d, e).matrix for e, d in covering_pairs(M.m)}
    weyl = {d: M.weyl(d).matrix for d in M.divisors}
    return MackeyFunctor(M.m, levels, res, tr, weyl, name=name)


def ef_sub(M, N: int) -> MackeyFunctor:
    M = _mackey(M)
    return sub_functor(M, family_generators(M, N), name=f"EF_{N}{M.name}")


def etilde(M, N: int) -> MackeyFunctor:
    M = _mackey(M)
    return quotient_functor(M, family_generators(M, N), name=f"ẼF_{N}{M.name}")


def etilde_burnside(m: int, N: int) -> GreenFunctor:
    """ẼF_N(A) as a Green functor: the family part is an ideal of the Burnside ring."""
    A = burnside(m)
    Q = etilde(A.mackey, N)
    algs = {d: Algebra(Q.level(d), A.algebra(d).mult, A.algebra(d).unit, check=True, name=f"ẼF_{N}A(C_{d})") for d in Q.divisors}
    return GreenFunctor(Q, algs)


def geometric_fixed_points(M, p: int) -> MackeyFunctor:
    """Φ_p M over C_{m/p}: level d is M(p d) modulo transfers from the family F_p."""
    M = _mackey(M)
    if M.m % p:
        raise ValueError(f"{p} does not divide {M.m}")
    Q = etilde(M, p)
    m2 = M.m // p
    levels = {d: Q.level(p * d) for d in divisors(m2)}
    res = {(e, d): Q.res(p * e, p * d).matrix for e, d in covering_pairs(m2)}
    tr = {(d, e): Q.tr(p * d, p * e).matrix for e, d in covering_pairs(m2)}
    weyl = {d: Q.weyl(p * d).matrix for d in divisors(m2)}
    return MackeyFunctor(m2, levels, res, tr, weyl, name=f"Φ_{p}{M.name}")


def geometric_fixed_points_green(R: GreenFunctor, p: int) -> GreenFunctor:
    Phi = geometric_fixed_points(R, p)
    algs = {d: Algebra(Phi.level(d), R.algebra(p * d).mult, R.algebra(p * d).unit, check=True, name=f"Φ{R.algebra(p * d).name}") for d in Phi.divisors}
    return GreenFunctor(Phi, algs)


def phi_vs_etilde(M, p: int) -> CheckReport:
    """Compare Φ_p M with M □ ẼF_p(A) at every level p·d by [x] ↦ [x ⊗ 1]_{pd}."""
    M = _mackey(M)
    rep = CheckReport(f"geometric fixed points of {M.name or 'M'} against M □ ẼF_{p}(A)")
    Phi = geometric_fixed_points(M, p)
    E = etilde_burnside(M.m, p)
    B = box(M, E)
    for d in Phi.divisors:
        k = p * d
        one = burnside_index(k)[k]
        S = B.space(k)
        cols = [{S.index(k, (x, one)): 1} for x in range(M.level(k).n_gens)]
        try:
            f = AbHom(Phi.level(d), B.level(k), IntMatrix._trusted(S.dim, len(cols), cols))
        except ValueError as exc:
            rep.add(f"level C_{k}", False, str(exc))
            continue
        rep.add(f"level C_{k}", is_isomorphism(f), f"{Phi.level(d)} -> {B.level(k)}")
    rep.data["phi"] = Phi.canonical_forms()
    rep.data["box"] = {p * d: B.level(p * d).canonical_form() for d in Phi.divisors}
    return rep


def phi_monoidal_map(factors, p: int) -> MackeyHom:
    """Φ_p(F_0 □ .. □ F_q) -> Φ_p F_0 □ .. □ Φ_p F_q,
    [x_0 ⊗ .. ⊗ x_q]_e ↦ [x̄_0 ⊗ .. ⊗ x̄_q]_{e/p} if p | e and 0 otherwise."""
    X = factors if isinstance(factors, BoxProduct) else BoxProduct([_mackey(F) for F in factors])
    macks = X.macks
    PX = geometric_fixed_points(X, p)
    Y = BoxProduct([geometric_fixed_points(F, p) for F in macks])
    maps = {}
    for d in PX.divisors:
        src = X.space(p * d)
        maps[d] = src.map_to(Y.space(d), lambda e, t: {(e // p, t): 1} if e % p == 0 else {}, source_group=PX.level(d), target_group=Y.level(d))
    return MackeyHom(PX, Y, maps)


def phi_monoidal_compare(factors, p: int) -> CheckReport:
    rep = CheckReport(f"Φ_{p} of a box product against the box product of Φ_{p}")
    try:
        f = phi_monoidal_map(factors, p)
    except ValueError as exc:
        rep.add("comparison map", False, str(exc))
        return rep
    rep.add("comparison map is a Mackey map", not f.failures(first_only=True))
    for d in f.source.divisors:
        rep.add(f"level C_{d} iso", is_isomorphism(f[d]), f"{f.source.level(d)} -> {f.target.level(d)}")
    return rep
