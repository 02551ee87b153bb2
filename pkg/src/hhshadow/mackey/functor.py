"""Mackey functors, Green functors and their bimodules for a cyclic group C_m.

Subgroups are indexed by their orders d | m, the generator g of C_m is fixed,
and ``C_d`` is generated by ``g^{m/d}``.  A Mackey functor stores, for each
divisor, a presented group ``level(d)`` with

* ``res(e, d) : level(d) -> level(e)`` for e | d,
* ``tr(d, e)  : level(e) -> level(d)`` for e | d,
* ``weyl(d)``: the action of g on ``level(d)``.

The axiom suite checks transitivity, Weyl equivariance, the invariance of
restriction and transfer under ``C_d``, and the double coset formula

    res_{a<-c} tr_{c<-b} = Σ_{i < c/lcm(a,b)} tr_{a<-e} weyl(e)^{(m/c) i} res_{e<-b},  e = gcd(a, b).
"""

from __future__ import annotations

from itertools import product
from math import gcd

from ..exact import AbHom, FGAbGroup, IntMatrix, is_isomorphism
from ..exact.abelian import kernel, solve_in_lattice
from ..report import CheckReport
from ..ringbimod import Algebra, AlgebraHom, AxiomError, Bimodule, add_scaled, as_vec


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def covering_pairs(m: int) -> list[tuple[int, int]]:
    """(e, d) with e | d and d/e prime."""
    out = []
    for d in divisors(m):
        for e in divisors(d):
            q = d // e
            if q > 1 and all(q % r for r in range(2, q)):
                out.append((e, d))
    return out


def power(f: AbHom, k: int) -> AbHom:
    out = AbHom.identity(f.source)
    for _ in range(k):
        out = f @ out
    return out


def _diff(f: AbHom, g: AbHom) -> int | None:
    return (f - g).first_nonzero_generator()


class MackeyFunctor:
    def __init__(self, m: int, levels, res, tr, weyl, check: bool = True, name: str = ""):
        self.m = m
        self.levels = dict(levels)
        self.name = name
        self._res = {}
        self._tr = {}
        self._weyl = {}
        for (e, d), f in dict(res).items():
            self._res[(e, d)] = f if isinstance(f, AbHom) else AbHom(self.levels[d], self.levels[e], f)
        for (d, e), f in dict(tr).items():
            self._tr[(d, e)] = f if isinstance(f, AbHom) else AbHom(self.levels[e], self.levels[d], f)
        for d, f in dict(weyl).items():
            self._weyl[d] = f if isinstance(f, AbHom) else AbHom(self.levels[d], self.levels[d], f)
        self._complete()
        if check:
            bad = self.axiom_failures(first_only=True)
            if bad:
                raise AxiomError(f"{name + ': ' if name else ''}{bad[0]}")

    def _complete(self) -> None:
        """Fill in identities and composites from covering pairs."""
        for d in divisors(self.m):
            self._res.setdefault((d, d), AbHom.identity(self.levels[d]))
            self._tr.setdefault((d, d), AbHom.identity(self.levels[d]))
            self._weyl.setdefault(d, AbHom.identity(self.levels[d]))
        for d in divisors(self.m):
            for e in sorted(divisors(d), reverse=True):
                if (e, d) in self._res:
                    continue
                for f in divisors(d):
                    if f != d and f % e == 0 and (f, d) in self._res and (e, f) in self._res:
                        self._res[(e, d)] = self._res[(e, f)] @ self._res[(f, d)]
                        break
                else:
                    raise ValueError(f"restriction {d} -> {e} cannot be determined")
            for e in sorted(divisors(d), reverse=True):
                if (d, e) in self._tr:
                    continue
                for f in divisors(d):
                    if f != d and f % e == 0 and (d, f) in self._tr and (f, e) in self._tr:
                        self._tr[(d, e)] = self._tr[(d, f)] @ self._tr[(f, e)]
                        break
                else:
                    raise ValueError(f"transfer {e} -> {d} cannot be determined")

    def level(self, d: int) -> FGAbGroup:
        return self.levels[d]

    def res(self, e: int, d: int) -> AbHom:
        return self._res[(e, d)]

    def tr(self, d: int, e: int) -> AbHom:
        return self._tr[(d, e)]

    def weyl(self, d: int, k: int = 1) -> AbHom:
        k %= self.m // d
        return power(self._weyl[d], k)

    @property
    def divisors(self) -> list[int]:
        return divisors(self.m)

    def top(self) -> FGAbGroup:
        return self.levels[self.m]

    def axiom_failures(self, first_only: bool = False) -> list[str]:
        bad = []
        m = self.m
        D = divisors(m)

        def fail(msg) -> bool:
            bad.append(msg)
            return first_only

        for d in D:
            k = _diff(self.weyl(d, 0), power(self._weyl[d], m // d))
            if k is not None and fail(f"weyl({d}) has order not dividing {m // d} (generator {k})"):
                return bad
        for e, d in product(D, D):
            if d % e:
                continue
            r, t = self.res(e, d), self.tr(d, e)
            k = _diff(r @ self._weyl[d], self._weyl[e] @ r)
            if k is not None and fail(f"res {d}->{e} does not commute with weyl (generator {k})"):
                return bad
            k = _diff(t @ self._weyl[e], self._weyl[d] @ t)
            if k is not None and fail(f"tr {e}->{d} does not commute with weyl (generator {k})"):
                return bad
            h = self.weyl(e, m // d)
            k = _diff(t @ h, t)
            if k is not None and fail(f"tr {e}->{d} is not invariant under C_{d} (generator {k})"):
                return bad
            k = _diff(h @ r, r)
            if k is not None and fail(f"res {d}->{e} does not land in C_{d}-invariants (generator {k})"):
                return bad
        for c in D:
            for b in divisors(c):
                for a in divisors(b):
                    k = _diff(self.res(a, b) @ self.res(b, c), self.res(a, c))
                    if k is not None and fail(f"res is not transitive on {c}->{b}->{a} (generator {k})"):
                        return bad
                    k = _diff(self.tr(c, b) @ self.tr(b, a), self.tr(c, a))
                    if k is not None and fail(f"tr is not transitive on {a}->{b}->{c} (generator {k})"):
                        return bad
        for c in D:
            for a, b in product(divisors(c), divisors(c)):
                e = gcd(a, b)
                lhs = self.res(a, c) @ self.tr(c, b)
                rhs = AbHom.zero(self.levels[b], self.levels[a])
                for i in range(c // lcm(a, b)):
                    rhs = rhs + self.tr(a, e) @ self.weyl(e, (m // c) * i) @ self.res(e, b)
                k = _diff(lhs, rhs)
                if k is not None and fail(f"double coset formula fails for a={a}, b={b}, c={c} (generator {k})"):
                    return bad
        return bad

    def check(self, title: str = "Mackey axioms") -> CheckReport:
        rep = CheckReport(title)
        bad = self.axiom_failures()
        rep.add(f"all axioms for C_{self.m}", not bad, "; ".join(bad[:5]))
        return rep

    def canonical_forms(self) -> dict:
        return {d: self.levels[d].canonical_form() for d in self.divisors}

    def to_json(self) -> dict:
        D = self.divisors
        return {
            "m": self.m,
            "levels": {str(d): self.levels[d].to_json() for d in D},
            "res": [{"from": d, "to": e, "matrix": self.res(e, d).matrix.to_rows()} for e, d in covering_pairs(self.m)],
            "tr": [{"from": e, "to": d, "matrix": self.tr(d, e).matrix.to_rows()} for e, d in covering_pairs(self.m)],
            "weyl": {str(d): self._weyl[d].matrix.to_rows() for d in D},
        }

    @classmethod
    def from_json(cls, obj, check: bool = True) -> "MackeyFunctor":
        m = int(obj["m"])
        levels = {int(d): FGAbGroup.from_json(g) for d, g in obj["levels"].items()}

        def mat(rows, src, tgt):
            return IntMatrix.from_rows(rows, ncols=levels[src].n_gens) if rows else IntMatrix.zeros(levels[tgt].n_gens, levels[src].n_gens)

        res = {(r["to"], r["from"]): mat(r["matrix"], r["from"], r["to"]) for r in obj.get("res", [])}
        tr = {(t["to"], t["from"]): mat(t["matrix"], t["from"], t["to"]) for t in obj.get("tr", [])}
        weyl = {int(d): mat(w, int(d), int(d)) for d, w in obj.get("weyl", {}).items()}
        return cls(m, levels, res, tr, weyl, check=check, name=obj.get("name", ""))


class MackeyHom:
    """Levelwise maps commuting with res, tr and weyl."""

    def __init__(self, source: MackeyFunctor, target: MackeyFunctor, maps, check: bool = True):
        self.source = source
        self.target = target
        self.maps = {}
        for d, f in dict(maps).items():
            self.maps[d] = f if isinstance(f, AbHom) else AbHom(source.level(d), target.level(d), f)
        if check:
            bad = self.failures(first_only=True)
            if bad:
                raise AxiomError(bad[0])

    def __getitem__(self, d: int) -> AbHom:
        return self.maps[d]

    def failures(self, first_only: bool = False) -> list[str]:
        S, T = self.source, self.target
        bad = []
        for e, d in covering_pairs(S.m):
            k = _diff(self.maps[e] @ S.res(e, d), T.res(e, d) @ self.maps[d])
            if k is not None:
                bad.append(f"does not commute with res {d}->{e} (generator {k})")
            k = _diff(self.maps[d] @ S.tr(d, e), T.tr(d, e) @ self.maps[e])
            if k is not None:
                bad.append(f"does not commute with tr {e}->{d} (generator {k})")
            if bad and first_only:
                return bad
        for d in S.divisors:
            k = _diff(self.maps[d] @ S.weyl(d), T.weyl(d) @ self.maps[d])
            if k is not None:
                bad.append(f"does not commute with weyl at {d} (generator {k})")
                if first_only:
                    return bad
        return bad

    def is_isomorphism(self) -> bool:
        return all(is_isomorphism(f) for f in self.maps.values())

    def __matmul__(self, other: "MackeyHom") -> "MackeyHom":
        return MackeyHom(other.source, self.target, {d: self.maps[d] @ other.maps[d] for d in self.maps}, check=False)


def isomorphic_levels(X: MackeyFunctor, Y: MackeyFunctor) -> bool:
    return X.m == Y.m and all(X.level(d).canonical_form() == Y.level(d).canonical_form() for d in X.divisors)


# -- constructors ---------------------------------------------------------------

def burnside_index(d: int) -> dict:
    """Basis of level d: [C_d/C_e] for e | d, in increasing order of e."""
    return {e: i for i, e in enumerate(divisors(d))}


def burnside_algebra(d: int) -> Algebra:
    idx = burnside_index(d)
    n = len(idx)
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for a, i in idx.items():
        for b, j in idx.items():
            mult[i][j] = {idx[gcd(a, b)]: d // lcm(a, b)}
    return Algebra(FGAbGroup.free(n), mult, {idx[d]: 1}, check=False, name=f"A(C_{d})")


def burnside(m: int) -> "GreenFunctor":
    """The Burnside Green functor: level d is free on the orbits C_d/C_e."""
    levels, res, tr, weyl, algs = {}, {}, {}, {}, {}
    for d in divisors(m):
        algs[d] = burnside_algebra(d)
        levels[d] = algs[d].group
    for d in divisors(m):
        src = burnside_index(d)
        for e in divisors(d):
            tgt = burnside_index(e)
            cols = []
            for f in divisors(d):
                g_ = gcd(e, f)
                cols.append({tgt[g_]: (d * g_) // (f * e)})
            res[(e, d)] = IntMatrix._trusted(len(tgt), len(src), cols)
            tr[(d, e)] = IntMatrix._trusted(len(src), len(tgt), [{src[f]: 1} for f in divisors(e)])
    M = MackeyFunctor(m, levels, res, tr, weyl, name=f"A_{m}")
    return GreenFunctor(M, algs)


class _Sub:
    """A subgroup of V given by a lattice basis (columns), with coordinates."""

    def __init__(self, V: FGAbGroup, basis: IntMatrix, group: FGAbGroup):
        self.V = V
        self.basis = basis
        self.group = group
        self._lat = basis.hstack(V.relations)

    def coords(self, v: dict) -> dict:
        sol = solve_in_lattice(self._lat, [v])
        if sol is None:
            raise ValueError("element is not in the subgroup")
        return {i: c for i, c in sol[0].items() if i < self.basis.cols}

    def matrix_of(self, images, rows: int) -> IntMatrix:
        return IntMatrix._trusted(rows, len(images), [self.coords(v) for v in images])


def fixed_point_mackey(m: int, V: FGAbGroup, g: AbHom | None = None, name: str = "") -> MackeyFunctor:
    """level(d) = fixed points of g^{m/d} on V; res is inclusion, tr the sum over
    coset translates, weyl the action of g."""
    g = g or AbHom.identity(V)
    if _diff(power(g, m), AbHom.identity(V)) is not None:
        raise ValueError(f"the action does not have order dividing {m}")
    subs = _fixed_subgroups(m, V, g)
    return _fixed_functor(m, V, g, subs, name)[0]


def _fixed_subgroups(m, V, g):
    subs = {}
    for d in divisors(m):
        h = power(g, m // d)
        K, inc = kernel(h - AbHom.identity(V))
        subs[d] = _Sub(V, inc.matrix, K)
    return subs


def _fixed_functor(m, V, g, subs, name):
    levels = {d: s.group for d, s in subs.items()}
    res, tr, weyl = {}, {}, {}
    for e, d in covering_pairs(m):
        S, T = subs[d], subs[e]
        res[(e, d)] = T.matrix_of([S.basis.column(j) for j in range(S.basis.cols)], T.basis.cols)
        h = power(g, m // d)
        imgs = []
        for j in range(T.basis.cols):
            v = T.basis.column(j)
            acc, cur = {}, dict(v)
            for _ in range(d // e):
                add_scaled(acc, cur, 1)
                cur = h.matrix.apply(cur)
            imgs.append(acc)
        tr[(d, e)] = S.matrix_of(imgs, S.basis.cols)
    for d in divisors(m):
        S = subs[d]
        weyl[d] = S.matrix_of([g.matrix.apply(S.basis.column(j)) for j in range(S.basis.cols)], S.basis.cols)
    return MackeyFunctor(m, levels, res, tr, weyl, name=name), subs


def fixed_point_green(m: int, A: Algebra, g: AbHom | None = None, name: str = "") -> "GreenFunctor":
    """Fixed points of a ring with a C_m-action by ring automorphisms."""
    if isinstance(g, AlgebraHom):
        g = g.hom
    g = g or AbHom.identity(A.group)
    AlgebraHom(A, A, g)
    if _diff(power(g, m), AbHom.identity(A.group)) is not None:
        raise ValueError(f"the action does not have order dividing {m}")
    subs = _fixed_subgroups(m, A.group, g)
    M, subs = _fixed_functor(m, A.group, g, subs, name)
    algs = {}
    for d, S in subs.items():
        n = S.basis.cols
        gens = [S.basis.column(j) for j in range(n)]
        mult = [[S.coords(A.mul(x, y)) for y in gens] for x in gens]
        algs[d] = Algebra(S.group, mult, S.coords(A.unit), check=True, name=f"{A.name}^C{d}")
    G = GreenFunctor(M, algs)
    G.ambient = (A, subs)
    return G


class GreenFunctor:
    """A Mackey functor with levelwise rings; res and weyl are ring maps and
    Frobenius reciprocity holds for transfers."""

    def __init__(self, mackey: MackeyFunctor, algebras, check: bool = True):
        self.mackey = mackey
        self.algebras = dict(algebras)
        for d, A in self.algebras.items():
            if A.group != mackey.level(d):
                raise ValueError(f"ring at level {d} is not on the level group")
        if check:
            bad = self.failures(first_only=True)
            if bad:
                raise AxiomError(bad[0])

    @property
    def m(self) -> int:
        return self.mackey.m

    def __getattr__(self, name):
        if name in ("mackey", "algebras"):
            raise AttributeError(name)
        return getattr(self.mackey, name)

    def algebra(self, d: int) -> Algebra:
        return self.algebras[d]

    def failures(self, first_only: bool = False) -> list[str]:
        M = self.mackey
        bad = []
        for d in M.divisors:
            A = self.algebras[d]
            w = M.weyl(d)
            if not A.equal(w.matrix.apply(A.unit), A.unit):
                bad.append(f"weyl({d}) does not fix the unit")
            for i, j in product(range(A.n), range(A.n)):
                if not A.equal(w.matrix.apply(A.mult[i][j]), A.mul(w.matrix.column(i), w.matrix.column(j))):
                    bad.append(f"weyl({d}) is not multiplicative on ({i},{j})")
                    break
            if bad and first_only:
                return bad
        for e, d in covering_pairs(M.m):
            A, B = self.algebras[d], self.algebras[e]
            r, t = M.res(e, d).matrix, M.tr(d, e).matrix
            if not B.equal(r.apply(A.unit), B.unit):
                bad.append(f"res {d}->{e} does not preserve the unit")
            for i, j in product(range(A.n), range(A.n)):
                if not B.equal(r.apply(A.mult[i][j]), B.mul(r.column(i), r.column(j))):
                    bad.append(f"res {d}->{e} is not multiplicative on ({i},{j})")
                    break
            for x, y in product(range(B.n), range(A.n)):
                if not A.equal(A.mul(t.column(x), {y: 1}), t.apply(B.mul({x: 1}, r.column(y)))):
                    bad.append(f"Frobenius tr(x)·y fails for {e}->{d} on ({x},{y})")
                    break
                if not A.equal(A.mul({y: 1}, t.column(x)), t.apply(B.mul(r.column(y), {x: 1}))):
                    bad.append(f"Frobenius y·tr(x) fails for {e}->{d} on ({x},{y})")
                    break
            if bad and first_only:
                return bad
        return bad


class GreenBimodule:
    """A Mackey functor with levelwise (R(d), S(d))-bimodule structures
    compatible with res, tr (Frobenius) and weyl."""

    def __init__(self, R: GreenFunctor, S: GreenFunctor, mackey: MackeyFunctor, left, right, check: bool = True, name: str = ""):
        self.R = R
        self.S = S
        self.mackey = mackey
        self.name = name
        self.bimodules = {}
        for d in mackey.divisors:
            self.bimodules[d] = Bimodule(R.algebra(d), S.algebra(d), mackey.level(d), left[d], right[d], check=check)
        if check:
            bad = self.failures(first_only=True)
            if bad:
                raise AxiomError(bad[0])

    @property
    def m(self) -> int:
        return self.mackey.m

    def level(self, d: int) -> FGAbGroup:
        return self.mackey.level(d)

    def bimodule(self, d: int) -> Bimodule:
        return self.bimodules[d]

    def failures(self, first_only: bool = False) -> list[str]:
        M, R, S = self.mackey, self.R, self.S
        bad = []
        for d in M.divisors:
            P = self.bimodules[d]
            w, wr, ws = M.weyl(d).matrix, R.weyl(d).matrix, S.weyl(d).matrix
            for a, x in product(range(R.algebra(d).n), range(P.n)):
                if not P.equal(w.apply(P.left[a][x]), P.act_left(wr.column(a), w.column(x))):
                    bad.append(f"weyl({d}) does not intertwine the left action")
                    break
            for x, b in product(range(P.n), range(S.algebra(d).n)):
                if not P.equal(w.apply(P.right[x][b]), P.act_right(w.column(x), ws.column(b))):
                    bad.append(f"weyl({d}) does not intertwine the right action")
                    break
            if bad and first_only:
                return bad
        for e, d in covering_pairs(M.m):
            Pd, Pe = self.bimodules[d], self.bimodules[e]
            r, t = M.res(e, d).matrix, M.tr(d, e).matrix
            rr, tr_ = R.res(e, d).matrix, R.tr(d, e).matrix
            rs, ts = S.res(e, d).matrix, S.tr(d, e).matrix
            for a, x in product(range(R.algebra(d).n), range(Pd.n)):
                if not Pe.equal(r.apply(Pd.left[a][x]), Pe.act_left(rr.column(a), r.column(x))):
                    bad.append(f"res {d}->{e} does not respect the left action")
                    break
            for x, b in product(range(Pd.n), range(S.algebra(d).n)):
                if not Pe.equal(r.apply(Pd.right[x][b]), Pe.act_right(r.column(x), rs.column(b))):
                    bad.append(f"res {d}->{e} does not respect the right action")
                    break
            # Frobenius: tr(a)·x = tr(a·res x), a·tr(y) = tr(res(a)·y), and on the right
            for a, x in product(range(R.algebra(e).n), range(Pd.n)):
                if not Pd.equal(Pd.act_left(tr_.column(a), {x: 1}), t.apply(Pe.act_left({a: 1}, r.column(x)))):
                    bad.append(f"left Frobenius fails for tr {e}->{d}")
                    break
            for a, y in product(range(R.algebra(d).n), range(Pe.n)):
                if not Pd.equal(Pd.act_left({a: 1}, t.column(y)), t.apply(Pe.act_left(rr.column(a), {y: 1}))):
                    bad.append(f"left Frobenius fails for tr {e}->{d} (module side)")
                    break
            for x, b in product(range(Pd.n), range(S.algebra(e).n)):
                if not Pd.equal(Pd.act_right({x: 1}, ts.column(b)), t.apply(Pe.act_right(r.column(x), {b: 1}))):
                    bad.append(f"right Frobenius fails for tr {e}->{d}")
                    break
            for y, b in product(range(Pe.n), range(S.algebra(d).n)):
                if not Pd.equal(Pd.act_right(t.column(y), {b: 1}), t.apply(Pe.act_right({y: 1}, rs.column(b)))):
                    bad.append(f"right Frobenius fails for tr {e}->{d} (module side)")
                    break
            if bad and first_only:
                return bad
        return bad


def unit_green_bimodule(R: GreenFunctor) -> GreenBimodule:
    """R as a bimodule over itself."""
    left = {d: R.algebra(d).mult for d in R.divisors}
    return GreenBimodule(R, R, R.mackey, left, left, check=False, name="R")


def burnside_action(M: MackeyFunctor, d: int, a: int, x: dict) -> dict:
    """[C_d/C_e] acting on x in level(d): tr_{d<-e} res_{e<-d} x."""
    e = divisors(d)[a]
    return M.tr(d, e).matrix.apply(M.res(e, d).matrix.apply(as_vec(x)))
