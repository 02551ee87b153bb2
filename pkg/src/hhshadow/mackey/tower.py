"""Finite cyclotomic towers and the inverse system of restriction maps.

Stage n is a Green functor R_n over C_{p^n} with a bimodule M_n, together
with isomorphisms Φ_p R_n ≅ R_{n-1} and Φ_p M_n ≅ M_{n-1}.  The restriction
map on the top level of the twisted cyclic nerve is

    HC(R_n; M_n)_q(C_{p^n}) -> Φ_p(HC_q)(C_{p^{n-1}})
        -> (Φ_p M_n □ Φ_p R_n^{□q})(C_{p^{n-1}}) -> HC(R_{n-1}; M_{n-1})_q(C_{p^{n-1}})

and the report collects the induced maps on HH_k at the top level, and the
limit of the finite system as the kernel of the shift map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..chain import check_chain_map
from ..exact import AbHom, IntMatrix, is_isomorphism
from ..exact.abelian import direct_sum, kernel
from ..ringbimod import AlgebraHom
from ..words import expand
from .box import BoxProduct
from .functor import MackeyHom, divisors, fixed_point_green, unit_green_bimodule
from .geometric import geometric_fixed_points, geometric_fixed_points_green, phi_monoidal_map
from .nerve import TwistedNerve


class TowerError(ValueError):
    """A structure map of the tower is not an isomorphism of the required kind."""


def _as_matrices(maps) -> dict:
    return {int(d): (f.matrix if isinstance(f, AbHom) else f) for d, f in dict(maps).items()}


class CyclotomicTower:
    def __init__(self, p: int, rings, isos, modules=None, module_isos=None, check: bool = True):
        self.p = p
        self.rings = list(rings)
        if not self.rings:
            raise TowerError("a tower needs at least one stage")
        for n, R in enumerate(self.rings):
            if R.m != p ** n:
                raise TowerError(f"stage {n} lives over C_{R.m}, expected C_{p ** n}")
        if len(isos) != len(self.rings) - 1:
            raise TowerError("need one structure isomorphism per stage after the first")
        self.modules = list(modules) if modules is not None else [unit_green_bimodule(R) for R in self.rings]
        self.iso_data = [_as_matrices(f) for f in isos]
        self.module_iso_data = [_as_matrices(f) for f in module_isos] if module_isos is not None else list(self.iso_data)
        self.isos = []
        self.module_isos = []
        for n in range(1, len(self.rings)):
            self.isos.append(self._ring_iso(n, check))
            self.module_isos.append(self._module_iso(n, check))

    @property
    def stages(self) -> int:
        return len(self.rings)

    def _ring_iso(self, n: int, check: bool) -> MackeyHom:
        R, R1 = self.rings[n], self.rings[n - 1]
        Phi = geometric_fixed_points_green(R, self.p)
        try:
            f = MackeyHom(Phi.mackey, R1.mackey, {d: AbHom(Phi.level(d), R1.level(d), self.iso_data[n - 1][d]) for d in Phi.divisors}, check=check)
        except (ValueError, KeyError) as exc:
            raise TowerError(f"stage {n}: ring structure map is not a Mackey map ({exc})") from exc
        if check:
            for d in Phi.divisors:
                if not is_isomorphism(f[d]):
                    raise TowerError(f"stage {n}: ring structure map is not an isomorphism at C_{d}")
                try:
                    AlgebraHom(Phi.algebra(d), R1.algebra(d), f[d])
                except ValueError as exc:
                    raise TowerError(f"stage {n}: ring structure map at C_{d} is not a ring map ({exc})") from exc
        return f

    def _module_iso(self, n: int, check: bool) -> MackeyHom:
        M, M1 = self.modules[n], self.modules[n - 1]
        p = self.p
        Phi = geometric_fixed_points(M.mackey, p)
        try:
            f = MackeyHom(Phi, M1.mackey, {d: AbHom(Phi.level(d), M1.level(d), self.module_iso_data[n - 1][d]) for d in Phi.divisors}, check=check)
        except (ValueError, KeyError) as exc:
            raise TowerError(f"stage {n}: module structure map is not a Mackey map ({exc})") from exc
        if check:
            fr = self.isos[n - 1]
            for d in Phi.divisors:
                if not is_isomorphism(f[d]):
                    raise TowerError(f"stage {n}: module structure map is not an isomorphism at C_{d}")
                B, B1 = M.bimodule(p * d), M1.bimodule(d)
                for x in range(B.n):
                    fx = f[d].matrix.column(x)
                    for r in range(B.left_algebra.n):
                        lhs = f[d].matrix.apply(B.left[r][x])
                        rhs = B1.act_left(fr[d].matrix.column(r), fx)
                        if not B1.equal(lhs, rhs):
                            raise TowerError(f"stage {n}: module structure map at C_{d} is not left linear")
                    for r in range(B.right_algebra.n):
                        lhs = f[d].matrix.apply(B.right[x][r])
                        rhs = B1.act_right(fx, fr[d].matrix.column(r))
                        if not B1.equal(lhs, rhs):
                            raise TowerError(f"stage {n}: module structure map at C_{d} is not right linear")
        return f

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "stages": [R.mackey.to_json() for R in self.rings],
            "isos": [{str(d): m.to_rows() for d, m in f.items()} for f in self.iso_data],
        }


def constant_tower(p: int, A, stages: int) -> CyclotomicTower:
    """R_n = fixed points of A under the trivial C_{p^n}-action, n < stages.

    This is a valid tower only when Φ_p of the fixed-point functor is again
    the fixed-point functor, e.g. when p = 0 in A."""
    rings = [fixed_point_green(p ** n, A, name=f"{A.name}^triv") for n in range(stages)]
    isos = []
    for n in range(1, stages):
        _, subs = rings[n].ambient
        _, subs1 = rings[n - 1].ambient
        maps = {}
        for d in divisors(p ** (n - 1)):
            src = subs[p * d]
            maps[d] = subs1[d].matrix_of([src.basis.column(j) for j in range(src.basis.cols)], subs1[d].basis.cols)
        isos.append(maps)
    return CyclotomicTower(p, rings, isos)


def restriction_chain_map(tower: CyclotomicTower, n: int, q: int, source: BoxProduct, target: BoxProduct) -> AbHom:
    """The composite at nerve level q from the top of stage n to the top of stage n-1."""
    p = tower.p
    top, top1 = p ** n, p ** (n - 1)
    Phi_map = phi_monoidal_map(source, p)
    if not is_isomorphism(Phi_map[top1]):
        raise TowerError(f"stage {n}: Φ of the level-{q} box product is not identified with the box of Φ")
    PX = Phi_map.source
    project = AbHom(source.level(top), PX.level(top1), IntMatrix.identity(source.level(top).n_gens))
    fm = tower.module_isos[n - 1]
    fr = tower.isos[n - 1]
    Y = Phi_map.target

    def apply_isos(d, t):
        parts = [fm[d].matrix.column(t[0])] + [fr[d].matrix.column(x) for x in t[1:]]
        return {(d, t2): c for t2, c in expand(parts).items()}

    structure = Y.space(top1).map_to(target.space(top1), apply_isos, source_group=Y.level(top1), target_group=target.level(top1))
    if not is_isomorphism(structure):
        raise TowerError(f"stage {n}: structure maps do not identify level {q}")
    return structure @ Phi_map[top1] @ project


@dataclass
class TrReport:
    p: int
    degree: int
    stage_values: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    limits: dict = field(default_factory=dict)
    stabilized: bool = False
    stable_from: int | None = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "degree": self.degree,
            "stage_values": {str(n): list(v) for n, v in self.stage_values.items()},
            "maps": {str(n): f.to_json() for n, f in self.maps.items()},
            "limits": {str(n): list(v) for n, v in self.limits.items()},
            "stabilized": self.stabilized,
            "stable_from": self.stable_from,
        }

    def table(self) -> str:
        from ..exact.abelian import format_canonical
        lines = [f"tr tower, p = {self.p}, degree {self.degree}", "stage  value at G/G    restriction to previous stage"]
        for n, v in self.stage_values.items():
            m = self.maps.get(n)
            mtxt = "" if m is None else f"{_describe(m)} {m.matrix.to_rows()}"
            lines.append(f"{n:>5}  {format_canonical(*v):<15} {mtxt}")
        for j, v in self.limits.items():
            lines.append(f"limit of the first {j} stages: {format_canonical(*v)}")
        lines.append(f"stabilized: {'yes' if self.stabilized else 'no'}" + (f" (from {self.stable_from} stages)" if self.stable_from else ""))
        return "\n".join(lines)


def _describe(f) -> str:
    from ..exact import is_injective, is_surjective
    inj, sur = is_injective(f), is_surjective(f)
    return "iso" if inj and sur else "injective" if inj else "surjective" if sur else "map"


def _limit(groups, maps):
    """Kernel of (x_n) ↦ (x_n - r_{n+1}(x_{n+1})) on the finite product."""
    if len(groups) == 1:
        return groups[0].canonical_form()
    src, inj, proj = direct_sum(*groups)
    tgt, inj2, _ = direct_sum(*groups[:-1])
    shift = None
    for n in range(len(groups) - 1):
        term = inj2[n] @ proj[n] - inj2[n] @ maps[n + 1] @ proj[n + 1]
        shift = term if shift is None else shift + term
    return kernel(shift)[0].canonical_form()


def tr_tower(tower: CyclotomicTower, k: int = 0, stages: int | None = None) -> TrReport:
    stages = stages or tower.stages
    if stages > tower.stages:
        raise ValueError(f"the tower has only {tower.stages} stages")
    p = tower.p
    nerves = [TwistedNerve(tower.rings[n], tower.modules[n], k + 1) for n in range(stages)]
    cx = [nerves[n].moore(p ** n) for n in range(stages)]
    H = [cx[n].homology_group(k) for n in range(stages)]
    rep = TrReport(p, k)
    maps = {}
    for n in range(stages):
        rep.stage_values[n] = H[n].canonical_form()
    for n in range(1, stages):
        chain = [restriction_chain_map(tower, n, q, nerves[n].levels[q], nerves[n - 1].levels[q]) for q in range(k + 2)]
        bad = check_chain_map(cx[n], cx[n - 1], chain)
        if bad:
            raise TowerError(f"stage {n}: restriction is not a chain map ({bad[0]})")
        maps[n] = H[n].induced(chain[k].matrix, H[n - 1])
    rep.maps = maps
    groups = [h.group for h in H]
    for j in range(1, stages + 1):
        rep.limits[j] = _limit(groups[:j], maps)
    values = [rep.limits[j] for j in range(1, stages + 1)]
    start = stages
    while start > 1 and values[start - 2] == values[-1]:
        start -= 1
    rep.stabilized = stages >= 2 and values[-1] == values[-2]
    rep.stable_from = start if rep.stabilized else None
    return rep
