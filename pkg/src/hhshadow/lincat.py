"""Small linear categories, their bimodules, and many-object Hochschild homology.

Conventions.  Objects are ``0 .. k-1``.  ``hom(a, b)`` is a presented group and
composition is written as a product in matrix order::

    hom(a, b) ⊗ hom(b, c) -> hom(a, c),    x ⊗ y ↦ x·y

so that ``Free_{<=r}(A)`` has ``hom(i, j)`` = i×j matrices over A with matrix
multiplication, and a one-object category is an algebra.  A bimodule P over
(C, D) has groups ``P(a, b)`` (a in C, b in D) with actions
``hom_C(a', a) ⊗ P(a, b) -> P(a', b)`` and ``P(a, b) ⊗ hom_D(b, b') -> P(a, b')``.

Level n of the cyclic bar construction is the sum over object tuples
``(a_0, .., a_n)`` of ``P(a_0, a_1) ⊗ hom(a_1, a_2) ⊗ .. ⊗ hom(a_n, a_0)``.
Factor k sits between ``a_k`` and ``a_{k+1}`` (indices mod n+1).  ``d_i`` for
``i < n`` multiplies factors i and i+1 and drops ``a_{i+1}``; ``d_n`` acts by the
last factor on P from the left and drops ``a_0``; ``s_j`` inserts the identity
of ``a_{j+1}`` after factor j.
"""

from __future__ import annotations

from itertools import product

from .chain import ChainComplex
from .exact import AbHom, FGAbGroup, IntMatrix
from .exact.abelian import tensor
from .hochschild import HomologyReport, guard, hh, homology_report
from .report import CheckReport
from .ringbimod import (
    Algebra,
    AxiomError,
    Bimodule,
    BimoduleHom,
    DualPairData,
    add_scaled,
    as_vec,
    bilinear,
    check_morita,
    keyed,
    merge,
    tensor_over,
    unit_bimodule,
)
from .simplicial import SimplicialAb
from .words import WordSpace


def _zero_in(G: FGAbGroup, v: dict) -> bool:
    return G.is_zero(v)


def _bilinear_failure(table, G1: FGAbGroup, G2: FGAbGroup, G3: FGAbGroup, what: str) -> str:
    for r in G1.relations.columns():
        for y in range(G2.n_gens):
            if not _zero_in(G3, bilinear(table, r, {y: 1})):
                return f"{what} is not well defined on a relation of the first factor"
    for r in G2.relations.columns():
        for x in range(G1.n_gens):
            if not _zero_in(G3, bilinear(table, {x: 1}, r)):
                return f"{what} is not well defined on a relation of the second factor"
    return ""


class LinearCategory:
    """A finite Ab-enriched category.

    ``homs[(a, b)]`` is an FGAbGroup, ``comp[(a, b, c)][x][y]`` the product of
    generators x of hom(a, b) and y of hom(b, c), ``ident[a]`` the identity."""

    def __init__(self, n_objects: int, homs, comp, ident, check: bool = True, name: str = "", labels=None):
        self.k = n_objects
        self.homs = dict(homs)
        self.comp = {key: [[as_vec(v) for v in row] for row in t] for key, t in comp.items()}
        self.ident = {a: as_vec(v) for a, v in dict(ident).items()}
        self.name = name
        self.labels = list(labels) if labels else [str(a) for a in range(n_objects)]
        if check:
            bad = self.failure()
            if bad:
                raise AxiomError(bad)

    @property
    def objects(self) -> range:
        return range(self.k)

    def hom(self, a: int, b: int) -> FGAbGroup:
        return self.homs[(a, b)]

    def rank(self, a: int, b: int) -> int:
        return self.homs[(a, b)].n_gens

    def mul(self, a: int, b: int, c: int, x, y) -> dict:
        return bilinear(self.comp[(a, b, c)], as_vec(x), as_vec(y))

    def failure(self) -> str:
        obs = self.objects
        for a, b in product(obs, obs):
            if (a, b) not in self.homs:
                return f"missing hom({a}, {b})"
        for a, b, c in product(obs, obs, obs):
            bad = _bilinear_failure(self.comp[(a, b, c)], self.hom(a, b), self.hom(b, c), self.hom(a, c), f"composition ({a},{b},{c})")
            if bad:
                return bad
        for a, b in product(obs, obs):
            H = self.hom(a, b)
            for x in range(H.n_gens):
                if not H.is_zero(_sub(self.mul(a, a, b, self.ident[a], {x: 1}), {x: 1})):
                    return f"identity of {a} is not a left unit on hom({a}, {b})"
                if not H.is_zero(_sub(self.mul(a, b, b, {x: 1}, self.ident[b]), {x: 1})):
                    return f"identity of {b} is not a right unit on hom({a}, {b})"
        for a, b, c, d in product(obs, obs, obs, obs):
            G = self.hom(a, d)
            for x in range(self.rank(a, b)):
                for y in range(self.rank(b, c)):
                    xy = self.mul(a, b, c, {x: 1}, {y: 1})
                    for z in range(self.rank(c, d)):
                        lhs = self.mul(a, c, d, xy, {z: 1})
                        rhs = self.mul(a, b, d, {x: 1}, self.mul(b, c, d, {y: 1}, {z: 1}))
                        if not G.is_zero(_sub(lhs, rhs)):
                            return f"composition is not associative on ({a},{b},{c},{d}) generators ({x},{y},{z})"
        return ""

    def to_json(self) -> dict:
        obs = self.objects
        return {
            "objects": self.labels,
            "homs": [{"source": a, "target": b, "group": self.hom(a, b).to_json()} for a, b in product(obs, obs)],
            "composition": [
                {"objects": [a, b, c], "table": [[sorted(v.items()) for v in row] for row in self.comp[(a, b, c)]]}
                for a, b, c in product(obs, obs, obs)
            ],
            "identities": [sorted(self.ident[a].items()) for a in obs],
        }

    @classmethod
    def from_json(cls, obj) -> "LinearCategory":
        labels = obj["objects"]
        k = len(labels)
        homs = {(h["source"], h["target"]): FGAbGroup.from_json(h["group"]) for h in obj["homs"]}
        comp = {}
        for c in obj["composition"]:
            a, b, cc = c["objects"]
            comp[(a, b, cc)] = [[_vec_json(v) for v in row] for row in c["table"]]
        ident = {a: _vec_json(v) for a, v in enumerate(obj["identities"])}
        return cls(k, homs, comp, ident, labels=labels, name=obj.get("name", ""))


def _vec_json(v):
    if isinstance(v, dict):
        return {int(i): c for i, c in v.items()}
    if v and isinstance(v[0], (list, tuple)):
        return {int(i): c for i, c in v}
    return as_vec(v)


def _sub(x: dict, y: dict) -> dict:
    out = dict(x)
    add_scaled(out, y, -1)
    return out


def one_object(A: Algebra) -> LinearCategory:
    return LinearCategory(1, {(0, 0): A.group}, {(0, 0, 0): A.mult}, {0: A.unit}, check=False, name=A.name)


def free_category(A: Algebra, r: int) -> LinearCategory:
    """Free_{<=r}(A): objects A^1 .. A^r; hom(i, j) = i×j matrices over A,
    generator ``E_pq ⊗ a_k`` at index ``(p*j + q) * A.n + k``."""
    n = A.n
    sizes = list(range(1, r + 1))
    homs = {}
    for a, b in product(range(r), range(r)):
        homs[(a, b)] = tensor(FGAbGroup.free(sizes[a] * sizes[b]), A.group)
    comp = {}
    for a, b, c in product(range(r), range(r), range(r)):
        i, j, l = sizes[a], sizes[b], sizes[c]
        t = [[{} for _ in range(j * l * n)] for _ in range(i * j * n)]
        for p in range(i):
            for q in range(j):
                for s in range(l):
                    for k in range(n):
                        for k2 in range(n):
                            t[(p * j + q) * n + k][(q * l + s) * n + k2] = {(p * l + s) * n + c2: v for c2, v in A.mult[k][k2].items()}
        comp[(a, b, c)] = t
    ident = {}
    for a in range(r):
        i = sizes[a]
        v = {}
        for p in range(i):
            for k, c in A.unit.items():
                v[(p * i + p) * n + k] = c
        ident[a] = v
    return LinearCategory(r, homs, comp, ident, check=False, name=f"Free<={r}({A.name})", labels=[f"A^{s}" for s in sizes])


class Functor:
    """Object map plus ``maps[(a, b)] : hom(a, b) -> hom(F a, F b)``."""

    def __init__(self, source: LinearCategory, target: LinearCategory, objects, maps, check: bool = True):
        self.source = source
        self.target = target
        self.objects = list(objects)
        self.maps = {}
        for key, m in dict(maps).items():
            a, b = key
            if not isinstance(m, AbHom):
                m = AbHom(source.hom(a, b), target.hom(self.objects[a], self.objects[b]), m)
            self.maps[key] = m
        if check:
            bad = self.failure()
            if bad:
                raise AxiomError(bad)

    def __call__(self, a: int) -> int:
        return self.objects[a]

    def on(self, a: int, b: int, x) -> dict:
        return self.maps[(a, b)].matrix.apply(as_vec(x))

    def failure(self) -> str:
        S, T = self.source, self.target
        F = self.objects
        for a in S.objects:
            if not T.hom(F[a], F[a]).is_zero(_sub(self.on(a, a, S.ident[a]), T.ident[F[a]])):
                return f"identity of {a} is not preserved"
        for a, b, c in product(S.objects, S.objects, S.objects):
            G = T.hom(F[a], F[c])
            for x in range(S.rank(a, b)):
                for y in range(S.rank(b, c)):
                    lhs = self.on(a, c, S.mul(a, b, c, {x: 1}, {y: 1}))
                    rhs = T.mul(F[a], F[b], F[c], self.on(a, b, {x: 1}), self.on(b, c, {y: 1}))
                    if not G.is_zero(_sub(lhs, rhs)):
                        return f"composition on ({a},{b},{c}) generators ({x},{y}) is not preserved"
        return ""

    @classmethod
    def identity(cls, C: LinearCategory) -> "Functor":
        return cls(C, C, list(C.objects), {(a, b): AbHom.identity(C.hom(a, b)) for a, b in product(C.objects, C.objects)}, check=False)


def inclusion(A: Algebra, F: LinearCategory, obj: int = 0) -> Functor:
    """The one-object category of A into a category whose object ``obj`` has endomorphisms A."""
    return Functor(one_object(A), F, [obj], {(0, 0): AbHom(A.group, F.hom(obj, obj), IntMatrix.identity(A.n))})


class CatBimodule:
    """P over (C, D): ``groups[(a, b)]``, ``left[(a2, a, b)][x][m]`` in P(a2, b) for
    x in hom_C(a2, a), ``right[(a, b, b2)][m][y]`` in P(a, b2) for y in hom_D(b, b2)."""

    def __init__(self, left_cat: LinearCategory, right_cat: LinearCategory, groups, left, right, check: bool = True, name: str = ""):
        self.left_cat = left_cat
        self.right_cat = right_cat
        self.groups = dict(groups)
        self.left = left
        self.right = right
        self.name = name
        if check:
            bad = self.failure()
            if bad:
                raise AxiomError(bad)

    def group(self, a: int, b: int) -> FGAbGroup:
        return self.groups[(a, b)]

    def rank(self, a: int, b: int) -> int:
        return self.groups[(a, b)].n_gens

    def act_left(self, a2, a, b, x, m) -> dict:
        return bilinear(self.left[(a2, a, b)], as_vec(x), as_vec(m))

    def act_right(self, a, b, b2, m, y) -> dict:
        return bilinear(self.right[(a, b, b2)], as_vec(m), as_vec(y))

    def failure(self) -> str:
        C, D = self.left_cat, self.right_cat
        for a2, a, b in product(C.objects, C.objects, D.objects):
            bad = _bilinear_failure(self.left[(a2, a, b)], C.hom(a2, a), self.group(a, b), self.group(a2, b), f"left action ({a2},{a},{b})")
            if bad:
                return bad
        for a, b, b2 in product(C.objects, D.objects, D.objects):
            bad = _bilinear_failure(self.right[(a, b, b2)], self.group(a, b), D.hom(b, b2), self.group(a, b2), f"right action ({a},{b},{b2})")
            if bad:
                return bad
        for a, b in product(C.objects, D.objects):
            G = self.group(a, b)
            for m in range(G.n_gens):
                if not G.is_zero(_sub(self.act_left(a, a, b, C.ident[a], {m: 1}), {m: 1})):
                    return f"left identity fails on P({a},{b}) generator {m}"
                if not G.is_zero(_sub(self.act_right(a, b, b, {m: 1}, D.ident[b]), {m: 1})):
                    return f"right identity fails on P({a},{b}) generator {m}"
        for a3, a2, a, b in product(C.objects, C.objects, C.objects, D.objects):
            G = self.group(a3, b)
            for x in range(C.rank(a3, a2)):
                for y in range(C.rank(a2, a)):
                    xy = C.mul(a3, a2, a, {x: 1}, {y: 1})
                    for m in range(self.rank(a, b)):
                        lhs = self.act_left(a3, a, b, xy, {m: 1})
                        rhs = self.act_left(a3, a2, b, {x: 1}, self.act_left(a2, a, b, {y: 1}, {m: 1}))
                        if not G.is_zero(_sub(lhs, rhs)):
                            return f"left action is not associative on ({a3},{a2},{a},{b})"
        for a, b, b2, b3 in product(C.objects, D.objects, D.objects, D.objects):
            G = self.group(a, b3)
            for m in range(self.rank(a, b)):
                for x in range(D.rank(b, b2)):
                    mx = self.act_right(a, b, b2, {m: 1}, {x: 1})
                    for y in range(D.rank(b2, b3)):
                        lhs = self.act_right(a, b2, b3, mx, {y: 1})
                        rhs = self.act_right(a, b, b3, {m: 1}, D.mul(b, b2, b3, {x: 1}, {y: 1}))
                        if not G.is_zero(_sub(lhs, rhs)):
                            return f"right action is not associative on ({a},{b},{b2},{b3})"
        for a2, a, b, b2 in product(C.objects, C.objects, D.objects, D.objects):
            G = self.group(a2, b2)
            for x in range(C.rank(a2, a)):
                for m in range(self.rank(a, b)):
                    xm = self.act_left(a2, a, b, {x: 1}, {m: 1})
                    for y in range(D.rank(b, b2)):
                        lhs = self.act_right(a2, b, b2, xm, {y: 1})
                        rhs = self.act_left(a2, a, b2, {x: 1}, self.act_right(a, b, b2, {m: 1}, {y: 1}))
                        if not G.is_zero(_sub(lhs, rhs)):
                            return f"actions do not commute on ({a2},{a},{b},{b2})"
        return ""


def hom_bimodule(F: Functor, G: Functor, check: bool = True) -> CatBimodule:
    """(a, b) ↦ hom_C(F a, G b) with actions through F and G and composition in C."""
    A, B, C = F.source, G.source, F.target
    groups = {(a, b): C.hom(F(a), G(b)) for a, b in product(A.objects, B.objects)}
    left, right = {}, {}
    for a2, a, b in product(A.objects, A.objects, B.objects):
        fa2, fa, gb = F(a2), F(a), G(b)
        left[(a2, a, b)] = [[C.mul(fa2, fa, gb, F.on(a2, a, {x: 1}), {m: 1}) for m in range(C.rank(fa, gb))] for x in range(A.rank(a2, a))]
    for a, b, b2 in product(A.objects, B.objects, B.objects):
        fa, gb, gb2 = F(a), G(b), G(b2)
        right[(a, b, b2)] = [[C.mul(fa, gb, gb2, {m: 1}, G.on(b, b2, {y: 1})) for y in range(B.rank(b, b2))] for m in range(C.rank(fa, gb))]
    return CatBimodule(A, B, groups, left, right, check=check)


def canonical_bimodule(C: LinearCategory) -> CatBimodule:
    """Ĉ = hom_bimodule(Id, Id)."""
    I = Functor.identity(C)
    return hom_bimodule(I, I, check=False)


# -- cyclic bar construction ------------------------------------------------------

def _cyc_space(C: LinearCategory, P: CatBimodule, n: int) -> WordSpace:
    obs = list(C.objects)
    summands = []
    for key in product(obs, repeat=n + 1):
        groups = [P.group(key[0], key[1 % (n + 1)])]
        for k in range(1, n + 1):
            groups.append(C.hom(key[k], key[(k + 1) % (n + 1)]))
        summands.append((key, groups))
    return WordSpace(summands)


def cyclic_bar_size(C: LinearCategory, P: CatBimodule | None, T: int) -> int:
    P = P or canonical_bimodule(C)
    total = 0
    for n in range(T + 1):
        for key in product(C.objects, repeat=n + 1):
            s = P.rank(key[0], key[1 % (n + 1)])
            for k in range(1, n + 1):
                s *= C.rank(key[k], key[(k + 1) % (n + 1)])
            total += s
    return total


def cyclic_bar_cat(C: LinearCategory, P: CatBimodule | None = None, T: int = 3, verify: bool = True) -> SimplicialAb:
    P = P or canonical_bimodule(C)
    spaces = [_cyc_space(C, P, n) for n in range(T + 1)]

    def face(n, i):
        def f(key, t):
            if i < n:
                a, b, c = key[i], key[i + 1], key[(i + 2) % (n + 1)]
                table = P.right[(a, b, c)] if i == 0 else C.comp[(a, b, c)]
                return keyed(merge(t, i, table), key[: i + 1] + key[i + 2:])
            # last factor hom(a_n, a_0) acts on P(a_0, a_1) from the left
            an, a0, a1 = key[n], key[0], key[1]
            table = P.left[(an, a0, a1)]
            return keyed({(k,) + t[1:-1]: c for k, c in table[t[-1]][t[0]].items()}, (an,) + key[1:n])
        return spaces[n].map_to(spaces[n - 1], f)

    def degen(n, j):
        def f(key, t):
            obj = key[(j + 1) % (n + 1)]
            newkey = key[: j + 1] + (obj,) + key[j + 1:]
            out = {}
            for k, c in C.ident[obj].items():
                out[t[: j + 1] + (k,) + t[j + 1:]] = c
            return keyed(out, newkey)
        return spaces[n].map_to(spaces[n + 1], f)

    levels = [s.group() for s in spaces]
    faces = [None] + [[face(n, i) for i in range(n + 1)] for n in range(1, T + 1)]
    degens = [[degen(n, j) for j in range(n + 1)] for n in range(T)]
    return SimplicialAb(levels, faces, degens, verify=verify, label="cyclic bar (category)")


def hh_cat(C: LinearCategory, P: CatBimodule | None = None, max_degree: int = 2, normalized: bool = True, ceiling: int | None = None) -> HomologyReport:
    T = max_degree + 1
    guard(cyclic_bar_size(C, P, T), ceiling, "categorical cyclic bar construction")
    X = cyclic_bar_cat(C, P, T)
    rep, _ = homology_report(X, max_degree, normalized, label="HH")
    return rep


# -- bar construction and the extra degeneracy ----------------------------------

def _bar_space(C: LinearCategory, first, last, n: int) -> WordSpace:
    """Sum over (c_0..c_n) of first(c_0) ⊗ hom(c_0,c_1) ⊗ .. ⊗ hom(c_{n-1},c_n) ⊗ last(c_n)."""
    summands = []
    for key in product(C.objects, repeat=n + 1):
        groups = [first(key[0])] + [C.hom(key[k], key[k + 1]) for k in range(n)] + [last(key[n])]
        summands.append((key, groups))
    return WordSpace(summands)


def augmented_bar_check(C: LinearCategory, F: Functor, G: Functor, a: int, b: int, T: int = 3) -> CheckReport:
    """Bar(C_{F,Id}; Ĉ; C_{Id,G})(a, b) augmented to hom(F a, G b), with the extra
    degeneracy that inserts the identity of F a at the front."""
    rep = CheckReport("augmented bar construction")
    fa, gb = F(a), G(b)
    first = lambda c: C.hom(fa, c)
    last = lambda c: C.hom(c, gb)
    spaces = [_bar_space(C, first, last, n) for n in range(T + 1)]
    guard(sum(s.dim for s in spaces), None, "bar construction")
    base = WordSpace([((), [C.hom(fa, gb)])])

    def face(n, i):
        def f(key, t):
            c = key
            x, z = (fa if i == 0 else c[i - 1]), (gb if i == n else c[i + 1])
            # multiply factor i (x -> c_i) with factor i+1 (c_i -> z)
            return keyed(merge(t, i, C.comp[(x, c[i], z)]), c[:i] + c[i + 1:])
        return spaces[n].map_to(spaces[n - 1], f)

    def degen(n, j):
        def f(key, t):
            obj = key[j]
            out = {t[: j + 1] + (k,) + t[j + 1:]: v for k, v in C.ident[obj].items()}
            return keyed(out, key[: j + 1] + (obj,) + key[j + 1:])
        return spaces[n].map_to(spaces[n + 1], f)

    def augmentation():
        return spaces[0].map_to(base, lambda key, t: keyed({(k,): v for k, v in C.mul(fa, key[0], gb, {t[0]: 1}, {t[1]: 1}).items()}))

    def extra(n):
        if n < 0:
            return base.map_to(spaces[0], lambda key, t: keyed({(k, t[0]): v for k, v in C.ident[fa].items()}, (fa,)))
        return spaces[n].map_to(spaces[n + 1], lambda key, t: keyed({(k,) + t: v for k, v in C.ident[fa].items()}, (fa,) + key))

    faces = [None] + [[face(n, i) for i in range(n + 1)] for n in range(1, T + 1)]
    degens = [[degen(n, j) for j in range(n + 1)] for n in range(T)]
    X = SimplicialAb([s.group() for s in spaces], faces, degens, verify=False, label="bar")
    bad = X.identity_failures(first_only=True)
    rep.add(f"bar construction is simplicial through level {T}", not bad, bad[0] if bad else "")
    eps = augmentation()
    k = (eps @ faces[1][0] - eps @ faces[1][1]).first_nonzero_generator() if T >= 1 else None
    rep.add("augmentation equalizes d_0 and d_1", k is None, "" if k is None else f"generator {k}")
    # extra degeneracy identities
    ext = [extra(n) for n in range(-1, T)]
    fails = []
    k = (eps @ ext[0] - AbHom.identity(base.group())).first_nonzero_generator()
    if k is not None:
        fails.append(f"d_0 s_-1 = id fails at level -1, generator {k}")
    for n in range(0, T):
        s = ext[n + 1]
        nxt = faces[n + 1]
        k = (nxt[0] @ s - AbHom.identity(spaces[n].group())).first_nonzero_generator()
        if k is not None:
            fails.append(f"d_0 s_-1 = id fails at level {n}, generator {k}")
        for i in range(1, n + 2):
            rhs = ext[n] @ (eps if n == 0 else faces[n][i - 1])
            k = (nxt[i] @ s - rhs).first_nonzero_generator()
            if k is not None:
                fails.append(f"d_{i} s_-1 = s_-1 d_{i - 1} fails at level {n}, generator {k}")
    rep.add("extra degeneracy identities hold", not fails, "; ".join(fails[:4]))
    # augmented Moore complex: degree k holds level k-1
    groups = [base.group()] + [s.group() for s in spaces]
    diffs = [eps] + [AbHom(groups[n + 1], groups[n], X.moore_differential(n)) for n in range(1, T + 1)]
    aug = ChainComplex(groups, diffs, truncated=True)
    forms = [aug.homology_canonical(q) for q in range(T + 1)]
    exact = all(f == (0, []) for f in forms)
    rep.add(f"augmented complex is exact through level {T - 1}", exact, ", ".join(str(f) for f in forms))
    unaug = X.moore_complex(normalized=False)
    h0 = unaug.homology_canonical(0)
    target = C.hom(fa, gb).canonical_form()
    rep.add("unaugmented H_0 is hom(F a, G b)", h0 == target, f"{h0} vs {target}")
    return rep


# -- total algebra and agreement ---------------------------------------------------

class TotalAlgebraData:
    """The algebra ⊕ hom(a, b) with zero products between non-composable
    generators and unit Σ id_a, with offsets of each hom block."""

    def __init__(self, C: LinearCategory):
        self.category = C
        self.offsets = {}
        off = 0
        rels = []
        for a, b in product(C.objects, C.objects):
            self.offsets[(a, b)] = off
            for col in C.hom(a, b).relations.columns():
                rels.append({off + i: v for i, v in col.items()})
            off += C.rank(a, b)
        n = off
        self.n = n
        group = FGAbGroup(n, IntMatrix._trusted(n, len(rels), rels))
        mult = [[{} for _ in range(n)] for _ in range(n)]
        for a, b, c in product(C.objects, C.objects, C.objects):
            o1, o2, o3 = self.offsets[(a, b)], self.offsets[(b, c)], self.offsets[(a, c)]
            for x in range(C.rank(a, b)):
                for y in range(C.rank(b, c)):
                    mult[o1 + x][o2 + y] = {o3 + k: v for k, v in C.comp[(a, b, c)][x][y].items()}
        unit = {}
        for a in C.objects:
            for k, v in C.ident[a].items():
                unit[self.offsets[(a, a)] + k] = v
        self.algebra = Algebra(group, mult, unit, check=False, name=f"Tot({C.name})")


def total_bimodule(P: CatBimodule, left: TotalAlgebraData, right: TotalAlgebraData) -> Bimodule:
    C, D = P.left_cat, P.right_cat
    offs = {}
    off = 0
    rels = []
    for a, b in product(C.objects, D.objects):
        offs[(a, b)] = off
        for col in P.group(a, b).relations.columns():
            rels.append({off + i: v for i, v in col.items()})
        off += P.rank(a, b)
    n = off
    group = FGAbGroup(n, IntMatrix._trusted(n, len(rels), rels))
    lt = [[{} for _ in range(n)] for _ in range(left.n)]
    rt = [[{} for _ in range(right.n)] for _ in range(n)]
    for a2, a, b in product(C.objects, C.objects, D.objects):
        o1, o2, o3 = left.offsets[(a2, a)], offs[(a, b)], offs[(a2, b)]
        for x in range(C.rank(a2, a)):
            for m in range(P.rank(a, b)):
                lt[o1 + x][o2 + m] = {o3 + k: v for k, v in P.left[(a2, a, b)][x][m].items()}
    for a, b, b2 in product(C.objects, D.objects, D.objects):
        o1, o2, o3 = offs[(a, b)], right.offsets[(b, b2)], offs[(a, b2)]
        for m in range(P.rank(a, b)):
            for y in range(D.rank(b, b2)):
                rt[o1 + m][o2 + y] = {o3 + k: v for k, v in P.right[(a, b, b2)][m][y].items()}
    out = Bimodule(left.algebra, right.algebra, group, lt, rt, check=False, name=P.name)
    out.offsets = offs
    return out


def inclusion_pair(A: Algebra, r: int) -> tuple[DualPairData, LinearCategory]:
    """The bimodules hom(ι-, -) and hom(-, ι-) of the inclusion of A into
    Free_{<=r}(A), over the total algebras, with evaluation by composition and
    coevaluation 1 ↦ id ⊗ id."""
    F = free_category(A, r)
    iota = inclusion(A, F, 0)
    IF = Functor.identity(F)
    tA, tF = TotalAlgebraData(iota.source), TotalAlgebraData(F)
    M = total_bimodule(hom_bimodule(iota, IF), tA, tF)
    N = total_bimodule(hom_bimodule(IF, iota), tF, tA)
    UA, UF = unit_bimodule(tA.algebra), unit_bimodule(tF.algebra)
    MN = tensor_over(M, N)
    NM = tensor_over(N, M)
    idv = {M.offsets[(0, 0)] + k: v for k, v in F.ident[0].items()}
    idn = {N.offsets[(0, 0)] + k: v for k, v in F.ident[0].items()}
    one_mn = MN.pair(idv, idn)
    co_cols = [MN.act_left({k: 1}, one_mn) for k in range(tA.n)]
    coeval = BimoduleHom(UA, MN, AbHom(UA.group, MN.group, IntMatrix._trusted(MN.n, tA.n, co_cols)))
    ev_cols = []
    for i in range(N.n):
        ni = _locate(N.offsets, i)
        for j in range(M.n):
            mj = _locate(M.offsets, j)
            (c, _), x = ni
            (_, d), y = mj
            ev_cols.append({tF.offsets[(c, d)] + k: v for k, v in F.mul(c, 0, d, {x: 1}, {y: 1}).items()})
    ev = BimoduleHom(NM, UF, AbHom(NM.group, UF.group, IntMatrix._trusted(UF.n, NM.n, ev_cols)))
    return DualPairData(M, N, ev, coeval), F


def _locate(offsets: dict, i: int):
    best = None
    for key, off in offsets.items():
        if off <= i and (best is None or off > best[1]):
            best = (key, off)
    return best[0], i - best[1]


def agreement_check(A: Algebra, r: int = 2, max_degree: int = 2, ceiling: int | None = None) -> CheckReport:
    """hh(A) against hh_cat(Free_{<=r}(A)) degreewise, and the degree-0 Morita data
    of the inclusion bimodules."""
    if r < 1 or r > 3:
        raise ValueError("r must be between 1 and 3")
    rep = CheckReport(f"agreement for Free<={r}")
    F = free_category(A, r)
    base = hh(A, max_degree=max_degree, ceiling=ceiling)
    cat = hh_cat(F, max_degree=max_degree, ceiling=ceiling)
    rep.add(f"HH agrees through degree {max_degree}", base.forms == cat.forms, f"{base} vs {cat}")
    rep.data["algebra"] = base.strings()
    rep.data["category"] = cat.strings()
    d, _ = inclusion_pair(A, r)
    rep.extend(check_morita(d), "inclusion bimodules: ")
    return rep
