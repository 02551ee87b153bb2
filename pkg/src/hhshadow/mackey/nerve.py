"""The twisted cyclic nerve of a Green functor and its homology Mackey functors.

Level q is ``^gP □ R^{□q}``.  On a generator ``[x ⊗ r_1 ⊗ .. ⊗ r_q]_d``:
``d_0`` is the right action of r_1 on x, ``d_i`` multiplies r_i r_{i+1},
``d_q`` moves r_q to the front and acts through the twisted left action
``g(r_q)·x``; degeneracies insert the unit of R(d).
"""

from __future__ import annotations

from ..chain import ChainComplex
from ..exact import FGAbGroup, IntMatrix
from ..hochschild import guard
from ..ringbimod import insert, keyed, merge
from ..simplicial import SimplicialAb
from .box import BoxProduct
from .functor import GreenBimodule, GreenFunctor, MackeyFunctor, MackeyHom, covering_pairs, divisors, unit_green_bimodule


def g_twist(P: GreenBimodule) -> GreenBimodule:
    """^gP: left action precomposed with the Weyl action on R."""
    R = P.R
    left, right = {}, {}
    for d in P.mackey.divisors:
        B = P.bimodule(d)
        w = R.weyl(d).matrix
        left[d] = [[B.act_left(w.column(a), {x: 1}) for x in range(B.n)] for a in range(R.algebra(d).n)]
        right[d] = B.right
    return GreenBimodule(R, P.S, P.mackey, left, right, check=False, name=f"^g{P.name}")


class TwistedNerve:
    """Levels ``HC_q`` for q <= T as box products, with faces and degeneracies
    at every level of the group."""

    def __init__(self, R: GreenFunctor, P: GreenBimodule | None = None, T: int = 2, verify: bool = True, check_maps: bool = True):
        P = P or unit_green_bimodule(R)
        self.R, self.P, self.T = R, P, T
        self.twisted = g_twist(P)
        m = R.m
        sizes = 0
        for q in range(T + 1):
            for k in divisors(m):
                sizes += sum(P.level(d).n_gens * R.level(d).n_gens ** q for d in divisors(k))
        guard(sizes, None, "twisted cyclic nerve")
        self.levels = [BoxProduct([P.mackey] + [R.mackey] * q, check=verify) for q in range(T + 1)]
        self.faces = {}
        self.degens = {}
        for q in range(1, T + 1):
            for i in range(q + 1):
                self.faces[(q, i)] = self._face(q, i, check_maps)
        for q in range(T):
            for j in range(q + 1):
                self.degens[(q, j)] = self._degen(q, j, check_maps)
        self.simplicial = {k: self._at(k, verify) for k in divisors(m)}

    def _face(self, q: int, i: int, check: bool) -> MackeyHom:
        R, P = self.R, self.twisted
        src, tgt = self.levels[q], self.levels[q - 1]
        maps = {}
        for k in src.divisors:
            def f(d, t):
                if i == 0:
                    return keyed(merge(t, 0, P.bimodule(d).right), d)
                if i < q:
                    return keyed(merge(t, i, R.algebra(d).mult), d)
                B = P.bimodule(d)
                return keyed({(x,) + t[1:-1]: c for x, c in B.left[t[-1]][t[0]].items()}, d)
            maps[k] = src.space(k).map_to(tgt.space(k), f, check=check, source_group=src.level(k), target_group=tgt.level(k))
        return MackeyHom(src, tgt, maps, check=check)

    def _degen(self, q: int, j: int, check: bool) -> MackeyHom:
        R = self.R
        src, tgt = self.levels[q], self.levels[q + 1]
        maps = {}
        for k in src.divisors:
            maps[k] = src.space(k).map_to(tgt.space(k), lambda d, t: keyed(insert(t, j + 1, R.algebra(d).unit), d), check=check, source_group=src.level(k), target_group=tgt.level(k))
        return MackeyHom(src, tgt, maps, check=check)

    def _at(self, k: int, verify: bool) -> SimplicialAb:
        T = self.T
        levels = [self.levels[q].level(k) for q in range(T + 1)]
        faces = [None] + [[self.faces[(q, i)][k] for i in range(q + 1)] for q in range(1, T + 1)]
        degens = [[self.degens[(q, j)][k] for j in range(q + 1)] for q in range(T)]
        return SimplicialAb(levels, faces, degens, verify=verify, label=f"twisted cyclic nerve at C_{k}")

    def at(self, k: int) -> SimplicialAb:
        return self.simplicial[k]

    def moore(self, k: int) -> ChainComplex:
        return self.simplicial[k].moore_complex(normalized=False)


def hh0_closed_form(R: GreenFunctor, P: GreenBimodule, k: int) -> FGAbGroup:
    """P(k) / span of tr_{k<-d}(x·r - g(r)·x)."""
    G = P.level(k)
    cols = []
    for d in divisors(k):
        B = P.bimodule(d)
        w = R.weyl(d).matrix
        t = P.mackey.tr(k, d).matrix
        for x in range(B.n):
            for r in range(R.algebra(d).n):
                v = dict(B.right[x][r])
                for y, c in B.act_left(w.column(r), {x: 1}).items():
                    v[y] = v.get(y, 0) - c
                img = t.apply({a: b for a, b in v.items() if b})
                if img:
                    cols.append(img)
    return FGAbGroup(G.n_gens, G.relations.hstack(IntMatrix._trusted(G.n_gens, len(cols), cols)))


def mackey_hh(R: GreenFunctor, P: GreenBimodule | None = None, max_degree: int = 1, nerve: TwistedNerve | None = None) -> list[MackeyFunctor]:
    """Homology Mackey functors of the twisted cyclic nerve, degrees 0..max_degree.

    Each level uses the unnormalized Moore complex; res, tr and weyl are
    induced from the chain maps of the box products."""
    P = P or unit_green_bimodule(R)
    N = nerve or TwistedNerve(R, P, max_degree + 1)
    m = R.m
    D = divisors(m)
    cx = {k: N.moore(k) for k in D}
    out = []
    for q in range(max_degree + 1):
        H = {k: cx[k].homology_group(q) for k in D}
        Xq = N.levels[q]
        res, tr, weyl = {}, {}, {}
        for e, k in covering_pairs(m):
            res[(e, k)] = H[k].induced(Xq.res(e, k).matrix, H[e])
            tr[(k, e)] = H[e].induced(Xq.tr(k, e).matrix, H[k])
        for k in D:
            weyl[k] = H[k].induced(Xq.weyl(k).matrix, H[k])
        F = MackeyFunctor(m, {k: H[k].group for k in D}, res, tr, weyl, name=f"HH_{q}")
        if q == 0:
            for k in D:
                closed = hh0_closed_form(R, P, k).canonical_form()
                if closed != F.level(k).canonical_form():
                    raise ArithmeticError(f"HH_0 at C_{k} differs from the closed form")
        out.append(F)
    return out
