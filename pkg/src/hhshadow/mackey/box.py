"""Box products of Mackey functors by the coend presentation.

Level k of ``F_0 □ .. □ F_q`` is generated by symbols ``[x_0 ⊗ .. ⊗ x_q]_d``
for d | k, with x_i generators of ``F_i(d)``, subject to

* the tensor relations of each summand,
* coinvariance under h = weyl(d)^{m/k} acting on all factors at once,
* Frobenius: ``[.. tr(x') ..]_d = [res(x_0) .. x' .. res(x_q)]_e`` for e | d,
  one factor transferred and the others restricted.

Transfer relabels the summand, weyl acts diagonally and restriction follows
the double coset rule.  Adjacent factors may additionally be balanced over a
Green functor (the relative product ``M □_S N``).
"""

from __future__ import annotations

from math import gcd

from ..exact import AbHom, FGAbGroup, IntMatrix
from ..words import WordSpace, expand
from .functor import (
    GreenBimodule,
    GreenFunctor,
    MackeyFunctor,
    MackeyHom,
    burnside_action,
    covering_pairs,
    divisors,
    lcm,
)


def _mackey(F) -> MackeyFunctor:
    return F.mackey if hasattr(F, "mackey") else F


class BoxProduct(MackeyFunctor):
    def __init__(self, factors, balance=(), check: bool = True, name: str = ""):
        self.factors = list(factors)
        self.macks = [_mackey(F) for F in self.factors]
        m = self.macks[0].m
        if any(F.m != m for F in self.macks):
            raise ValueError("factors live over different groups")
        self.balance = list(balance)
        self.spaces = {k: WordSpace([(d, [F.level(d) for F in self.macks]) for d in divisors(k)]) for k in divisors(m)}
        levels = {k: self._level_group(k) for k in divisors(m)}
        res, tr, weyl = {}, {}, {}
        for e, k in covering_pairs(m):
            tr[(k, e)] = self._transfer(k, e, levels)
            res[(e, k)] = self._restriction(e, k, levels)
        for k in divisors(m):
            weyl[k] = self._weyl_map(k, levels)
        super().__init__(m, levels, res, tr, weyl, check=check, name=name or "□".join(F.name or "F" for F in self.macks))

    @property
    def arity(self) -> int:
        return len(self.macks)

    def space(self, k: int) -> WordSpace:
        return self.spaces[k]

    def _level_group(self, k: int) -> FGAbGroup:
        S = self.spaces[k]
        base = S.group()
        m = self.macks[0].m
        cols = []
        for d in divisors(k):
            hs = [F.weyl(d, m // k).matrix for F in self.macks]
            if any(not h.is_diagonal() or any(v != 1 for v in h.diagonal()) for h in hs):
                for key, t in _summand_basis(S, d):
                    col = {S.index(d, t): 1}
                    for t2, c in expand([h.column(x) for h, x in zip(hs, t)]).items():
                        i = S.index(d, t2)
                        col[i] = col.get(i, 0) - c
                    col = {i: v for i, v in col.items() if v}
                    if col:
                        cols.append(col)
        for e, d in covering_pairs(k):
            for pos in range(self.arity):
                F = self.macks[pos]
                tr_m = F.tr(d, e).matrix
                others = [i for i in range(self.arity) if i != pos]
                res_m = {i: self.macks[i].res(e, d).matrix for i in others}
                ranges = [range(F.level(e).n_gens) if i == pos else range(self.macks[i].level(d).n_gens) for i in range(self.arity)]
                for t in _product(ranges):
                    lhs = expand([tr_m.column(t[i]) if i == pos else {t[i]: 1} for i in range(self.arity)])
                    rhs = expand([{t[i]: 1} if i == pos else res_m[i].column(t[i]) for i in range(self.arity)])
                    col = {}
                    for t2, c in lhs.items():
                        j = S.index(d, t2)
                        col[j] = col.get(j, 0) + c
                    for t2, c in rhs.items():
                        j = S.index(e, t2)
                        col[j] = col.get(j, 0) - c
                    col = {i: v for i, v in col.items() if v}
                    if col:
                        cols.append(col)
        for pos, _S in self.balance:
            left_f, right_f = self.factors[pos], self.factors[pos + 1]
            for d in divisors(k):
                Pl, Pr = left_f.bimodule(d), right_f.bimodule(d)
                alg = Pl.right_algebra
                for key, t in _summand_basis(S, d):
                    for s in range(alg.n):
                        a = [{x: 1} for x in t]
                        a[pos] = Pl.right[t[pos]][s]
                        b = [{x: 1} for x in t]
                        b[pos + 1] = Pr.left[s][t[pos + 1]]
                        col = {}
                        for t2, c in expand(a).items():
                            j = S.index(d, t2)
                            col[j] = col.get(j, 0) + c
                        for t2, c in expand(b).items():
                            j = S.index(d, t2)
                            col[j] = col.get(j, 0) - c
                        col = {i: v for i, v in col.items() if v}
                        if col:
                            cols.append(col)
        rel = base.relations.hstack(IntMatrix._trusted(S.dim, len(cols), cols)) if cols else base.relations
        return FGAbGroup(S.dim, rel)

    def _transfer(self, k: int, e: int, levels) -> AbHom:
        src, tgt = self.spaces[e], self.spaces[k]
        return src.map_to(tgt, lambda d, t: {(d, t): 1}, source_group=levels[e], target_group=levels[k])

    def _restriction(self, e: int, k: int, levels) -> AbHom:
        m = self.macks[0].m
        src, tgt = self.spaces[k], self.spaces[e]
        cache = {}

        def data(d):
            if d not in cache:
                f = gcd(e, d)
                reps = k // lcm(e, d)
                per = []
                for F in self.macks:
                    r = F.res(f, d).matrix
                    per.append([r @ F.weyl(d, (m // k) * i).matrix for i in range(reps)])
                cache[d] = (f, reps, per)
            return cache[d]

        def f(d, t):
            g_, reps, per = data(d)
            out = {}
            for i in range(reps):
                for t2, c in expand([per[j][i].column(t[j]) for j in range(len(t))]).items():
                    out[(g_, t2)] = out.get((g_, t2), 0) + c
            return out

        return src.map_to(tgt, f, source_group=levels[k], target_group=levels[e])

    def _weyl_map(self, k: int, levels) -> AbHom:
        S = self.spaces[k]
        ws = {d: [F.weyl(d).matrix for F in self.macks] for d in divisors(k)}
        return S.map_to(S, lambda d, t: {(d, t2): c for t2, c in expand([w.column(x) for w, x in zip(ws[d], t)]).items()}, source_group=levels[k], target_group=levels[k])


def _summand_basis(S: WordSpace, d: int):
    for tup in _product([range(s) for s in S.sizes[d]]):
        yield d, tup


def _product(ranges):
    from itertools import product
    return product(*ranges)


def box(*factors, check: bool = True) -> BoxProduct:
    return BoxProduct(factors, check=check)


def relative_box(M: GreenBimodule, N: GreenBimodule, check: bool = True) -> "RelativeBox":
    """M □_S N for M an (R, S)- and N an (S, T)-bimodule, as an (R, T)-bimodule."""
    return RelativeBox(M, N, check=check)


class RelativeBox(GreenBimodule):
    def __init__(self, M: GreenBimodule, N: GreenBimodule, check: bool = True):
        B = BoxProduct([M, N], balance=[(0, M.S)], check=check)
        self.box = B
        self.pair = (M, N)
        left, right = {}, {}
        for k in B.divisors:
            S = B.space(k)
            R, T = M.R, N.S
            rk = R.algebra(k).n
            left[k] = [[None] * S.dim for _ in range(rk)]
            for a in range(rk):
                for d, t in S.basis():
                    ra = R.res(d, k).matrix.column(a)
                    vec = {}
                    for x, c in M.bimodule(d).act_left(ra, {t[0]: 1}).items():
                        j = S.index(d, (x, t[1]))
                        vec[j] = vec.get(j, 0) + c
                    left[k][a][S.index(d, t)] = {i: v for i, v in vec.items() if v}
            tk = T.algebra(k).n
            right[k] = [[None] * tk for _ in range(S.dim)]
            for d, t in S.basis():
                for b in range(tk):
                    rb = T.res(d, k).matrix.column(b)
                    vec = {}
                    for y, c in N.bimodule(d).act_right({t[1]: 1}, rb).items():
                        j = S.index(d, (t[0], y))
                        vec[j] = vec.get(j, 0) + c
                    right[k][S.index(d, t)][b] = {i: v for i, v in vec.items() if v}
        super().__init__(M.R, N.S, B, left, right, check=check, name=f"{M.name}□{N.name}")


# -- structural isomorphisms -----------------------------------------------------

def box_unit_iso(M: MackeyFunctor, A: GreenFunctor | None = None) -> MackeyHom:
    """burnside □ M -> M, [a ⊗ y]_d ↦ tr_{k<-d}(a·y)."""
    from .functor import burnside
    M = _mackey(M)
    A = A or burnside(M.m)
    B = box(A, M)
    maps = {}
    for k in M.divisors:
        S = B.space(k)
        cols = []
        for d, t in S.basis():
            cols.append(M.tr(k, d).matrix.apply(burnside_action(M, d, t[0], {t[1]: 1})))
        maps[k] = AbHom(B.level(k), M.level(k), IntMatrix._trusted(M.level(k).n_gens, S.dim, cols))
    return MackeyHom(B, M, maps)


def box_symmetry(X: BoxProduct, Y: BoxProduct) -> MackeyHom:
    """X = M □ N -> Y = N □ M, [x ⊗ y]_d ↦ [y ⊗ x]_d."""
    maps = {}
    for k in X.divisors:
        maps[k] = X.space(k).map_to(Y.space(k), lambda d, t: {(d, (t[1], t[0])): 1}, source_group=X.level(k), target_group=Y.level(k))
    return MackeyHom(X, Y, maps)


def box_flatten_left(X: BoxProduct, flat: BoxProduct) -> MackeyHom:
    """(M □ N) □ P -> M □ N □ P, [[x ⊗ y]_e ⊗ z]_d ↦ [x ⊗ y ⊗ res_{e<-d} z]_e."""
    inner = X.macks[0]
    P = X.macks[1]
    maps = {}
    for k in X.divisors:
        def f(d, t):
            u, z = t
            e, tup = _locate_summand(inner.space(d), u)
            return {(e, tup + (z2,)): c for z2, c in P.res(e, d).matrix.column(z).items()}
        maps[k] = X.space(k).map_to(flat.space(k), f, source_group=X.level(k), target_group=flat.level(k))
    return MackeyHom(X, flat, maps)


def box_flatten_right(X: BoxProduct, flat: BoxProduct) -> MackeyHom:
    """M □ (N □ P) -> M □ N □ P, [x ⊗ [y ⊗ z]_e]_d ↦ [res_{e<-d} x ⊗ y ⊗ z]_e."""
    M = X.macks[0]
    inner = X.macks[1]
    maps = {}
    for k in X.divisors:
        def f(d, t):
            x, u = t
            e, tup = _locate_summand(inner.space(d), u)
            return {(e, (x2,) + tup): c for x2, c in M.res(e, d).matrix.column(x).items()}
        maps[k] = X.space(k).map_to(flat.space(k), f, source_group=X.level(k), target_group=flat.level(k))
    return MackeyHom(X, flat, maps)


def _locate_summand(S: WordSpace, i: int):
    for key in S.keys:
        off = S.offsets[key]
        size = 1
        for s in S.sizes[key]:
            size *= s
        if off <= i < off + size:
            r = i - off
            tup = []
            for s in reversed(S.sizes[key]):
                tup.append(r % s)
                r //= s
            return key, tuple(reversed(tup))
    raise IndexError(i)
