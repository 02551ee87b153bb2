"""Algebras over the integers given by structure constants, and their bimodules.

An algebra is a finitely generated abelian group with a multiplication table
on generators; a bimodule carries left and right action tables.  All tables
are sparse: entry ``[i][j]`` is a dict ``{generator: coefficient}``.  Axioms
are checked on generators modulo relations, which suffices by bilinearity.

The tensor product over an algebra is the underived one (a coequalizer,
presented as a cokernel).  Associators are the identity on generator
triples, unitors are the action maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact import AbHom, Element, FGAbGroup, IntMatrix, is_isomorphism
from .exact.abelian import inverse, tensor
from .report import CheckReport
from .simplicial import SimplicialAb
from .words import WordSpace


class AxiomError(ValueError):
    pass


def as_vec(x, n: int | None = None) -> dict:
    if isinstance(x, Element):
        x = x.coords
    if isinstance(x, Mapping):
        return {int(i): int(v) for i, v in x.items() if v}
    if isinstance(x, int):
        return {0: x} if x else {}
    out = {i: int(v) for i, v in enumerate(x) if v}
    if n is not None and len(x) != n:
        raise ValueError(f"expected a vector of length {n}")
    return out


def dense(vec: Mapping[int, int], n: int) -> list[int]:
    out = [0] * n
    for i, v in vec.items():
        out[i] = v
    return out


def add_scaled(out: dict, vec: Mapping[int, int], k: int) -> None:
    if not k:
        return
    for i, v in vec.items():
        s = out.get(i, 0) + k * v
        if s:
            out[i] = s
        else:
            out.pop(i, None)


def bilinear(table, x: Mapping[int, int], y: Mapping[int, int]) -> dict:
    out = {}
    for i, a in x.items():
        row = table[i]
        for j, b in y.items():
            add_scaled(out, row[j], a * b)
    return out


def _table(raw, n1: int, n2: int, n_out: int) -> list[list[dict]]:
    if len(raw) != n1 or any(len(r) != n2 for r in raw):
        raise ValueError(f"action table must be {n1}x{n2}")
    return [[as_vec(raw[i][j], n_out) if not isinstance(raw[i][j], Mapping) else as_vec(raw[i][j]) for j in range(n2)] for i in range(n1)]


class Algebra:
    """An associative unital ring structure on a finitely generated abelian group."""

    def __init__(self, group: FGAbGroup, mult, unit, check: bool = True, name: str = ""):
        n = group.n_gens
        self.group = group
        self.mult = _table(mult, n, n, n)
        self.unit = as_vec(unit)
        self.name = name
        if check:
            self.check()

    @property
    def n(self) -> int:
        return self.group.n_gens

    def mul(self, x, y) -> dict:
        return bilinear(self.mult, as_vec(x), as_vec(y))

    def is_zero(self, x) -> bool:
        return self.group.is_zero(as_vec(x))

    def equal(self, x, y) -> bool:
        d = dict(as_vec(x))
        add_scaled(d, as_vec(y), -1)
        return self.group.is_zero(d)

    def check(self) -> None:
        n = self.n
        g = self.group
        for k, rel in enumerate(g.relations.columns()):
            for j in range(n):
                if not g.is_zero(self.mul(rel, {j: 1})):
                    raise AxiomError(f"multiplication is not well defined: relator {k} times generator {j}")
                if not g.is_zero(self.mul({j: 1}, rel)):
                    raise AxiomError(f"multiplication is not well defined: generator {j} times relator {k}")
        for i in range(n):
            for j in range(n):
                ij = self.mult[i][j]
                for k in range(n):
                    lhs = bilinear(self.mult, ij, {k: 1})
                    rhs = bilinear(self.mult, {i: 1}, self.mult[j][k])
                    if not self.equal(lhs, rhs):
                        raise AxiomError(f"associativity fails on generators ({i}, {j}, {k})")
        for i in range(n):
            if not self.equal(self.mul(self.unit, {i: 1}), {i: 1}):
                raise AxiomError(f"left unit law fails on generator {i}")
            if not self.equal(self.mul({i: 1}, self.unit), {i: 1}):
                raise AxiomError(f"right unit law fails on generator {i}")

    def is_commutative(self) -> bool:
        return all(self.equal(self.mult[i][j], self.mult[j][i]) for i in range(self.n) for j in range(i))

    def unit_generator(self) -> int | None:
        """Index of the generator equal to the unit, when the unit is one."""
        if len(self.unit) == 1:
            (i, v), = self.unit.items()
            if v == 1:
                return i
        return None

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, {self.group})"

    def to_json(self) -> dict:
        n = self.n
        return {
            "group": self.group.to_json(),
            "mult": [[dense(self.mult[i][j], n) for j in range(n)] for i in range(n)],
            "unit": dense(self.unit, n),
            **({"name": self.name} if self.name else {}),
        }

    @classmethod
    def from_json(cls, obj) -> "Algebra":
        return cls(FGAbGroup.from_json(obj["group"]), obj["mult"], obj["unit"], name=obj.get("name", ""))


def make_algebra(group: FGAbGroup, mult_table, unit, name: str = "") -> Algebra:
    return Algebra(group, mult_table, unit, name=name)


class AlgebraHom:
    """A unital ring homomorphism given by its matrix on generators."""

    def __init__(self, source: Algebra, target: Algebra, hom, check: bool = True):
        if not isinstance(hom, AbHom):
            hom = AbHom(source.group, target.group, hom)
        self.source = source
        self.target = target
        self.hom = hom
        if check:
            if not target.equal(self(source.unit), target.unit):
                raise AxiomError("map does not preserve the unit")
            for i in range(source.n):
                for j in range(source.n):
                    if not target.equal(self(source.mult[i][j]), target.mul(self({i: 1}), self({j: 1}))):
                        raise AxiomError(f"map is not multiplicative on generators ({i}, {j})")

    def __call__(self, x) -> dict:
        return self.hom.matrix.apply(as_vec(x))

    def image(self, i: int) -> dict:
        return self.hom.matrix.column(i)

    def is_automorphism(self) -> bool:
        return (self.source is self.target or self.source.group == self.target.group) and is_isomorphism(self.hom)

    def inverse(self) -> "AlgebraHom":
        return AlgebraHom(self.target, self.source, inverse(self.hom), check=False)

    def __matmul__(self, other: "AlgebraHom") -> "AlgebraHom":
        return AlgebraHom(other.source, self.target, self.hom @ other.hom, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraHom) and self.hom == other.hom

    def __hash__(self) -> int:
        return hash(self.hom)

    @classmethod
    def identity(cls, A: Algebra) -> "AlgebraHom":
        return cls(A, A, AbHom.identity(A.group), check=False)


def automorphism(A: Algebra, matrix) -> AlgebraHom:
    """An automorphism of ``A`` from its matrix; bijectivity and multiplicativity are checked."""
    phi = AlgebraHom(A, A, matrix)
    if not is_isomorphism(phi.hom):
        raise AxiomError("map is not invertible")
    return phi


class Bimodule:
    """An (A, B)-bimodule: ``left[a][m]`` is a·m and ``right[m][b]`` is m·b."""

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra, group: FGAbGroup, left_action, right_action, check: bool = True, name: str = ""):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.group = group
        n = group.n_gens
        self.left = _table(left_action, left_algebra.n, n, n)
        self.right = _table(right_action, n, right_algebra.n, n)
        self.name = name
        if check:
            self.check()

    @property
    def n(self) -> int:
        return self.group.n_gens

    def act_left(self, a, m) -> dict:
        return bilinear(self.left, as_vec(a), as_vec(m))

    def act_right(self, m, b) -> dict:
        return bilinear(self.right, as_vec(m), as_vec(b))

    def equal(self, x, y) -> bool:
        d = dict(as_vec(x))
        add_scaled(d, as_vec(y), -1)
        return self.group.is_zero(d)

    def check(self) -> None:
        A, B, g = self.left_algebra, self.right_algebra, self.group
        n = self.n
        for k, rel in enumerate(A.group.relations.columns()):
            for m in range(n):
                if not g.is_zero(self.act_left(rel, {m: 1})):
                    raise AxiomError(f"left action not well defined: algebra relator {k} on generator {m}")
        for k, rel in enumerate(g.relations.columns()):
            for a in range(A.n):
                if not g.is_zero(self.act_left({a: 1}, rel)):
                    raise AxiomError(f"left action not well defined: generator {a} on module relator {k}")
            for b in range(B.n):
                if not g.is_zero(self.act_right(rel, {b: 1})):
                    raise AxiomError(f"right action not well defined: module relator {k} by generator {b}")
        for k, rel in enumerate(B.group.relations.columns()):
            for m in range(n):
                if not g.is_zero(self.act_right({m: 1}, rel)):
                    raise AxiomError(f"right action not well defined: generator {m} by algebra relator {k}")
        for m in range(n):
            e = {m: 1}
            if not self.equal(self.act_left(A.unit, e), e):
                raise AxiomError(f"left unit law fails on generator {m}")
            if not self.equal(self.act_right(e, B.unit), e):
                raise AxiomError(f"right unit law fails on generator {m}")
            for a in range(A.n):
                am = self.left[a][m]
                for a2 in range(A.n):
                    if not self.equal(self.act_left({a2: 1}, am), self.act_left(A.mult[a2][a], e)):
                        raise AxiomError(f"left associativity fails on ({a2}, {a}, m{m})")
                for b in range(B.n):
                    if not self.equal(self.act_right(am, {b: 1}), self.act_left({a: 1}, self.right[m][b])):
                        raise AxiomError(f"actions do not commute on (a{a}, m{m}, b{b})")
            for b in range(B.n):
                mb = self.right[m][b]
                for b2 in range(B.n):
                    if not self.equal(self.act_right(mb, {b2: 1}), self.act_right(e, B.mult[b][b2])):
                        raise AxiomError(f"right associativity fails on (m{m}, {b}, {b2})")

    def __repr__(self) -> str:
        return f"Bimodule({self.name or '?'}, {self.group})"

    def to_json(self) -> dict:
        n = self.n
        return {
            "group": self.group.to_json(),
            "left_action": [[dense(self.left[a][m], n) for m in range(n)] for a in range(self.left_algebra.n)],
            "right_action": [[dense(self.right[m][b], n) for b in range(self.right_algebra.n)] for m in range(n)],
            **({"name": self.name} if self.name else {}),
        }


def unit_bimodule(A: Algebra) -> Bimodule:
    """U_A: the algebra as a bimodule over itself."""
    return Bimodule(A, A, A.group, A.mult, A.mult, check=False, name=f"U({A.name})" if A.name else "U")


def restrict_bimodule(M: Bimodule, left: AlgebraHom | None = None, right: AlgebraHom | None = None) -> Bimodule:
    """Pull back the actions along ring maps into the acting algebras."""
    la = left.source if left else M.left_algebra
    ra = right.source if right else M.right_algebra
    lt = [[M.act_left(left.image(a) if left else {a: 1}, {m: 1}) for m in range(M.n)] for a in range(la.n)]
    rt = [[M.act_right({m: 1}, right.image(b) if right else {b: 1}) for b in range(ra.n)] for m in range(M.n)]
    return Bimodule(la, ra, M.group, lt, rt, check=False, name=M.name)


def twist_left(M: Bimodule, phi: AlgebraHom) -> Bimodule:
    """^φM: same group, left action precomposed with φ, right action unchanged."""
    if phi.source is not M.left_algebra and phi.source.group != M.left_algebra.group:
        raise ValueError("automorphism is not of the left algebra")
    if not phi.is_automorphism():
        raise AxiomError("twisting map is not an automorphism")
    out = restrict_bimodule(M, left=phi)
    out.left_algebra = M.left_algebra
    return out


def twist_right(M: Bimodule, psi: AlgebraHom) -> Bimodule:
    """M^ψ: right action precomposed with ψ."""
    if not psi.is_automorphism():
        raise AxiomError("twisting map is not an automorphism")
    out = restrict_bimodule(M, right=psi)
    out.right_algebra = M.right_algebra
    return out


class BimoduleHom:
    """A homomorphism of underlying groups commuting with both actions."""

    def __init__(self, source: Bimodule, target: Bimodule, hom, check: bool = True):
        if not isinstance(hom, AbHom):
            hom = AbHom(source.group, target.group, hom if isinstance(hom, IntMatrix) else IntMatrix.from_rows(hom, ncols=source.n))
        self.source = source
        self.target = target
        self.hom = hom
        if check:
            bad = self.failure()
            if bad:
                raise AxiomError(bad)

    def __call__(self, x) -> dict:
        return self.hom.matrix.apply(as_vec(x))

    def failure(self) -> str:
        S, T = self.source, self.target
        for m in range(S.n):
            fm = self({m: 1})
            for a in range(S.left_algebra.n):
                if not T.equal(self(S.left[a][m]), T.act_left({a: 1}, fm)):
                    return f"does not commute with the left action on (a{a}, m{m})"
            for b in range(S.right_algebra.n):
                if not T.equal(self(S.right[m][b]), T.act_right(fm, {b: 1})):
                    return f"does not commute with the right action on (m{m}, b{b})"
        return ""

    def __matmul__(self, other: "BimoduleHom") -> "BimoduleHom":
        return BimoduleHom(other.source, self.target, self.hom @ other.hom, check=False)

    def __rmul__(self, k: int) -> "BimoduleHom":
        return BimoduleHom(self.source, self.target, k * self.hom, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, BimoduleHom) and self.hom == other.hom

    def __hash__(self) -> int:
        return hash(self.hom)

    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.hom)

    def inverse(self) -> "BimoduleHom":
        return BimoduleHom(self.target, self.source, inverse(self.hom), check=False)

    @classmethod
    def identity(cls, M: Bimodule) -> "BimoduleHom":
        return cls(M, M, AbHom.identity(M.group), check=False)


class TensorOver(Bimodule):
    """``M ⊗_B N`` presented on generators ``m_i ⊗ n_j`` (index ``i * N.n + j``)
    modulo the relations of both factors and the balancing relations."""

    def __init__(self, M: Bimodule, N: Bimodule):
        if M.right_algebra is not N.left_algebra and not _same_algebra(M.right_algebra, N.left_algebra):
            raise ValueError("middle algebras do not match")
        B = M.right_algebra
        nM, nN = M.n, N.n
        base = tensor(M.group, N.group)
        bal = []
        for i in range(nM):
            for b in range(B.n):
                mb = M.right[i][b]
                for j in range(nN):
                    col = {}
                    for k, c in mb.items():
                        add_scaled(col, {k * nN + j: 1}, c)
                    for k, c in N.left[b][j].items():
                        add_scaled(col, {i * nN + k: 1}, -c)
                    if col:
                        bal.append(col)
        rel = base.relations.hstack(IntMatrix._trusted(nM * nN, len(bal), bal))
        group = FGAbGroup(nM * nN, rel)
        left = [[{k * nN + j: c for k, c in M.left[a][i].items()} for i in range(nM) for j in range(nN)] for a in range(M.left_algebra.n)]
        right = [[{i * nN + k: c for k, c in N.right[j][b].items()} for b in range(N.right_algebra.n)] for i in range(nM) for j in range(nN)]
        super().__init__(M.left_algebra, N.right_algebra, group, left, right, check=False, name=f"({M.name}⊗{N.name})")
        self.factors = (M, N)

    def pair(self, m, n) -> dict:
        """Coordinates of the class of m ⊗ n."""
        nN = self.factors[1].n
        out = {}
        for i, a in as_vec(m).items():
            for j, b in as_vec(n).items():
                add_scaled(out, {i * nN + j: 1}, a * b)
        return out


def _same_algebra(A: Algebra, B: Algebra) -> bool:
    return A.group == B.group and A.mult == B.mult and A.unit == B.unit


def tensor_over(M: Bimodule, N: Bimodule) -> TensorOver:
    return TensorOver(M, N)


def tensor_hom_over(f: BimoduleHom, g: BimoduleHom, source: TensorOver | None = None, target: TensorOver | None = None) -> BimoduleHom:
    source = source or tensor_over(f.source, g.source)
    target = target or tensor_over(f.target, g.target)
    return BimoduleHom(source, target, AbHom(source.group, target.group, f.hom.matrix.kron(g.hom.matrix)), check=False)


def left_unitor(M: Bimodule, source: TensorOver | None = None) -> BimoduleHom:
    """U_A ⊗_A M -> M, a ⊗ m ↦ a·m."""
    src = source or tensor_over(unit_bimodule(M.left_algebra), M)
    cols = [M.left[a][m] for a in range(M.left_algebra.n) for m in range(M.n)]
    return BimoduleHom(src, M, AbHom(src.group, M.group, IntMatrix._trusted(M.n, len(cols), cols)), check=False)


def right_unitor(M: Bimodule, source: TensorOver | None = None) -> BimoduleHom:
    """M ⊗_B U_B -> M, m ⊗ b ↦ m·b."""
    src = source or tensor_over(M, unit_bimodule(M.right_algebra))
    cols = [M.right[m][b] for m in range(M.n) for b in range(M.right_algebra.n)]
    return BimoduleHom(src, M, AbHom(src.group, M.group, IntMatrix._trusted(M.n, len(cols), cols)), check=False)


def left_unitor_inverse(M: Bimodule, target: TensorOver | None = None) -> BimoduleHom:
    """m ↦ 1 ⊗ m."""
    tgt = target or tensor_over(unit_bimodule(M.left_algebra), M)
    unit = M.left_algebra.unit
    cols = [tgt.pair(unit, {m: 1}) for m in range(M.n)]
    return BimoduleHom(M, tgt, AbHom(M.group, tgt.group, IntMatrix._trusted(tgt.n, M.n, cols)), check=False)


def right_unitor_inverse(M: Bimodule, target: TensorOver | None = None) -> BimoduleHom:
    """m ↦ m ⊗ 1."""
    tgt = target or tensor_over(M, unit_bimodule(M.right_algebra))
    unit = M.right_algebra.unit
    cols = [tgt.pair({m: 1}, unit) for m in range(M.n)]
    return BimoduleHom(M, tgt, AbHom(M.group, tgt.group, IntMatrix._trusted(tgt.n, M.n, cols)), check=False)


def associator(source: TensorOver, target: TensorOver) -> BimoduleHom:
    """(M ⊗ N) ⊗ P -> M ⊗ (N ⊗ P); the identity on generator triples."""
    if source.n != target.n:
        raise ValueError("associator between groups of different sizes")
    return BimoduleHom(source, target, AbHom(source.group, target.group, IntMatrix.identity(source.n)), check=True)


def associator_for(M: Bimodule, N: Bimodule, P: Bimodule) -> BimoduleHom:
    return associator(tensor_over(tensor_over(M, N), P), tensor_over(M, tensor_over(N, P)))


# -- bar resolution ---------------------------------------------------------

def merge(tup: tuple, i: int, table) -> dict:
    """Replace factors ``i, i+1`` of a basis word by their product."""
    out = {}
    head, tail = tup[:i], tup[i + 2:]
    for k, c in table[tup[i]][tup[i + 1]].items():
        out[head + (k,) + tail] = c
    return out


def insert(tup: tuple, pos: int, vec: Mapping[int, int]) -> dict:
    head, tail = tup[:pos], tup[pos:]
    return {head + (k,) + tail: c for k, c in vec.items()}


def keyed(d: dict, key=()) -> dict:
    return {(key, t): c for t, c in d.items()}


def bar_resolution(M: Bimodule, B: Algebra, N: Bimodule, trunc: int, verify: bool = True) -> SimplicialAb:
    """Bar(M; B; N): level p is M ⊗ B^p ⊗ N (over Z) with faces from the
    right action on M, multiplication in B and the left action on N."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    spaces = [WordSpace.single([M.group] + [B.group] * p + [N.group]) for p in range(trunc + 1)]

    def face(p, i):
        def f(key, t):
            if i == 0:
                return keyed(merge(t, 0, M.right))
            if i == p:
                return keyed(merge(t, p, N.left))
            return keyed(merge(t, i, B.mult))
        return spaces[p].map_to(spaces[p - 1], f)

    def degen(p, j):
        return spaces[p].map_to(spaces[p + 1], lambda key, t: keyed(insert(t, j + 1, B.unit)))

    levels = [s.group() for s in spaces]
    faces = [None] + [[face(p, i) for i in range(p + 1)] for p in range(1, trunc + 1)]
    degens = [[degen(p, j) for j in range(p + 1)] for p in range(trunc)]
    return SimplicialAb(levels, faces, degens, verify=verify, label="bar")


# -- standard algebras ------------------------------------------------------

def integers() -> Algebra:
    return Algebra(FGAbGroup.free(1), [[[1]]], [1], name="Z")


def cyclic_ring(n: int) -> Algebra:
    return Algebra(FGAbGroup.cyclic(n), [[[1]]], [1], name=f"Z/{n}")


def group_ring(n: int, base: int = 0) -> Algebra:
    """Z[C_n] (or (Z/base)[C_n]) on the basis 1, t, ..., t^{n-1}."""
    g = FGAbGroup.from_orders([base] * n)
    mult = [[{(i + j) % n: 1} for j in range(n)] for i in range(n)]
    name = f"Z[C{n}]" if not base else f"Z/{base}[C{n}]"
    return Algebra(g, mult, {0: 1}, name=name)


def dual_numbers() -> Algebra:
    """Z[x]/(x^2) on the basis 1, x."""
    return Algebra(FGAbGroup.free(2), [[{0: 1}, {1: 1}], [{1: 1}, {}]], {0: 1}, name="Z[x]/x^2")


def product_algebra(A: Algebra, B: Algebra) -> Algebra:
    g = FGAbGroup(A.n + B.n, IntMatrix.block_diag(A.group.relations, B.group.relations))
    n = A.n + B.n
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(A.n):
        for j in range(A.n):
            mult[i][j] = dict(A.mult[i][j])
    for i in range(B.n):
        for j in range(B.n):
            mult[A.n + i][A.n + j] = {A.n + k: c for k, c in B.mult[i][j].items()}
    unit = dict(A.unit)
    unit.update({A.n + k: c for k, c in B.unit.items()})
    return Algebra(g, mult, unit, name=f"{A.name}x{B.name}")


def matrix_algebra(A: Algebra, r: int) -> Algebra:
    """M_r(A); generator ``E_ij ⊗ a_k`` has index ``(i*r + j) * A.n + k``."""
    n = A.n
    g = tensor(FGAbGroup.free(r * r), A.group)
    N = r * r * n
    mult = [[{} for _ in range(N)] for _ in range(N)]
    for i in range(r):
        for j in range(r):
            for l in range(r):
                for k in range(n):
                    for k2 in range(n):
                        prod = A.mult[k][k2]
                        mult[(i * r + j) * n + k][(j * r + l) * n + k2] = {(i * r + l) * n + c: v for c, v in prod.items()}
    unit = {}
    for i in range(r):
        for k, c in A.unit.items():
            unit[(i * r + i) * n + k] = c
    return Algebra(g, mult, unit, name=f"M{r}({A.name})")


def matrix_automorphism(phi: AlgebraHom, r: int, B: Algebra) -> AlgebraHom:
    """φ applied entrywise on M_r(A)."""
    n = phi.source.n
    cols = []
    for ij in range(r * r):
        for k in range(n):
            cols.append({ij * n + c: v for c, v in phi.image(k).items()})
    return AlgebraHom(B, B, AbHom(B.group, B.group, IntMatrix._trusted(B.n, B.n, cols)))


def row_module(A: Algebra, r: int, B: Algebra | None = None) -> Bimodule:
    """Rows A^{1×r} as an (A, M_r(A))-bimodule; generator ``e_j a_k`` has index ``j*A.n + k``."""
    B = B or matrix_algebra(A, r)
    n = A.n
    g = tensor(FGAbGroup.free(r), A.group)
    left = [[{j * n + c: v for c, v in A.mult[a][k].items()} for j in range(r) for k in range(n)] for a in range(n)]
    right = [[{} for _ in range(B.n)] for _ in range(r * n)]
    for j in range(r):
        for k in range(n):
            for q in range(r):
                for k2 in range(n):
                    right[j * n + k][(j * r + q) * n + k2] = {q * n + c: v for c, v in A.mult[k][k2].items()}
    return Bimodule(A, B, g, left, right, name=f"row{r}({A.name})")


def column_module(A: Algebra, r: int, B: Algebra | None = None) -> Bimodule:
    """Columns A^{r×1} as an (M_r(A), A)-bimodule; generator ``e_j a_k`` has index ``j*A.n + k``."""
    B = B or matrix_algebra(A, r)
    n = A.n
    g = tensor(FGAbGroup.free(r), A.group)
    left = [[{} for _ in range(r * n)] for _ in range(B.n)]
    for p in range(r):
        for j in range(r):
            for k2 in range(n):
                for k in range(n):
                    left[(p * r + j) * n + k2][j * n + k] = {p * n + c: v for c, v in A.mult[k2][k].items()}
    right = [[{j * n + c: v for c, v in A.mult[k][a].items()} for a in range(n)] for j in range(r) for k in range(n)]
    return Bimodule(B, A, g, left, right, name=f"col{r}({A.name})")


# -- dual pairs -----------------------------------------------------------------

@dataclass
class DualPairData:
    """M: (A,B), N: (B,A); eval: N ⊗_A M -> U_B; coeval: U_A -> M ⊗_B N."""

    M: Bimodule
    N: Bimodule
    eval: BimoduleHom
    coeval: BimoduleHom

    @property
    def A(self) -> Algebra:
        return self.M.left_algebra

    @property
    def B(self) -> Algebra:
        return self.M.right_algebra

    def reversed(self) -> "DualPairData":
        """(N, M) with the inverse structure maps; needs eval and coeval invertible."""
        return DualPairData(self.N, self.M, self.coeval.inverse(), self.eval.inverse())


def triangle_composites(d: DualPairData) -> tuple[AbHom, AbHom]:
    """The two triangle composites M -> M and N -> N."""
    M, N = d.M, d.N
    UA, UB = unit_bimodule(d.A), unit_bimodule(d.B)
    MN = tensor_over(M, N)
    NM = tensor_over(N, M)
    # M -> U_A⊗M -> (M⊗N)⊗M -> M⊗(N⊗M) -> M⊗U_B -> M
    UAM = tensor_over(UA, M)
    MN_M = tensor_over(MN, M)
    M_NM = tensor_over(M, NM)
    MUB = tensor_over(M, UB)
    s1 = left_unitor_inverse(M, UAM)
    s2 = tensor_hom_over(d.coeval, BimoduleHom.identity(M), UAM, MN_M)
    s3 = associator(MN_M, M_NM)
    s4 = tensor_hom_over(BimoduleHom.identity(M), d.eval, M_NM, MUB)
    s5 = right_unitor(M, MUB)
    tri_m = _compose_checked([s1, s2, s3, s4, s5])
    # N -> N⊗U_A -> N⊗(M⊗N) -> (N⊗M)⊗N -> U_B⊗N -> N
    NUA = tensor_over(N, UA)
    N_MN = tensor_over(N, MN)
    NM_N = tensor_over(NM, N)
    UBN = tensor_over(UB, N)
    t1 = right_unitor_inverse(N, NUA)
    t2 = tensor_hom_over(BimoduleHom.identity(N), d.coeval, NUA, N_MN)
    t3 = associator(N_MN, NM_N)
    t4 = tensor_hom_over(d.eval, BimoduleHom.identity(N), NM_N, UBN)
    t5 = left_unitor(N, UBN)
    tri_n = _compose_checked([t1, t2, t3, t4, t5])
    return tri_m, tri_n


def _compose_checked(steps: Sequence[BimoduleHom]) -> AbHom:
    out = None
    for s in steps:
        # re-check well-definedness of each step between the presented groups
        AbHom(s.hom.source, s.hom.target, s.hom.matrix, check=True)
        out = s.hom if out is None else s.hom @ out
    return out


def check_dual_pair(d: DualPairData, title: str = "dual pair") -> CheckReport:
    rep = CheckReport(title)
    rep.add("eval is a bimodule map", not d.eval.failure(), d.eval.failure())
    rep.add("coeval is a bimodule map", not d.coeval.failure(), d.coeval.failure())
    try:
        tri_m, tri_n = triangle_composites(d)
    except ValueError as exc:
        rep.add("triangle composites are well defined", False, str(exc))
        return rep
    bad = (tri_m - AbHom.identity(d.M.group)).first_nonzero_generator()
    rep.add("triangle identity on M", bad is None, "" if bad is None else f"fails on generator {bad}")
    bad = (tri_n - AbHom.identity(d.N.group)).first_nonzero_generator()
    rep.add("triangle identity on N", bad is None, "" if bad is None else f"fails on generator {bad}")
    return rep


def check_morita(d: DualPairData, reverse: DualPairData | None = None) -> CheckReport:
    """Both (M, N) and (N, M) are dual pairs and both evaluations are isomorphisms."""
    rep = CheckReport("Morita equivalence")
    rep.extend(check_dual_pair(d), "(M,N): ")
    ev_iso = d.eval.is_isomorphism()
    co_iso = d.coeval.is_isomorphism()
    rep.add("eval of (M,N) is an isomorphism", ev_iso)
    rep.add("coeval of (M,N) is an isomorphism", co_iso)
    if reverse is None:
        if not (ev_iso and co_iso):
            rep.add("reversed pair available", False, "structure maps are not invertible")
            return rep
        reverse = d.reversed()
    rep.extend(check_dual_pair(reverse), "(N,M): ")
    rep.add("eval of (N,M) is an isomorphism", reverse.eval.is_isomorphism())
    return rep


def matrix_morita_pair(A: Algebra, r: int, B: Algebra | None = None) -> DualPairData:
    """Rows and columns between A and M_r(A): coeval 1 ↦ e_1 ⊗ e_1, eval the outer product."""
    B = B or matrix_algebra(A, r)
    M = row_module(A, r, B)
    N = column_module(A, r, B)
    n = A.n
    MN = tensor_over(M, N)
    NM = tensor_over(N, M)
    UA, UB = unit_bimodule(A), unit_bimodule(B)
    # coeval: a_k ↦ (e_0 a_k) ⊗ (e_0 · 1)
    co_cols = [MN.pair({k: 1}, A.unit) for k in range(n)]
    coeval = BimoduleHom(UA, MN, AbHom(UA.group, MN.group, IntMatrix._trusted(MN.n, n, co_cols)))
    # eval: (e_j a_k) ⊗ (e_p a_l) ↦ E_jp (a_k a_l)
    ev_cols = []
    for j in range(r):
        for k in range(n):
            for p in range(r):
                for l in range(n):
                    ev_cols.append({(j * r + p) * n + c: v for c, v in A.mult[k][l].items()})
    ev = BimoduleHom(NM, UB, AbHom(NM.group, UB.group, IntMatrix._trusted(B.n, NM.n, ev_cols)))
    return DualPairData(M, N, ev, coeval)


def identity_pair(A: Algebra) -> DualPairData:
    """(U_A, U_A) with the unitors as structure maps."""
    U = unit_bimodule(A)
    UU = tensor_over(U, U)
    ev = left_unitor(U, UU)
    co = left_unitor_inverse(U, UU)
    return DualPairData(U, U, ev, co)


def reduce_bimodule(M: Bimodule) -> tuple[Bimodule, BimoduleHom]:
    """An isomorphic bimodule on the cyclic decomposition of M's group, with the
    isomorphism M -> reduced.  Keeps later tensor constructions small."""
    G = M.group
    R = FGAbGroup.from_orders(G.orders)
    to_c, from_c = G.to_cyc, G.from_cyc
    gens = [from_c.column(k) for k in range(R.n_gens)]

    def back(v):
        return {i: c for i, c in enumerate(R.reduce_cyc(to_c.apply(v))) if c}

    left = [[back(M.act_left({a: 1}, g)) for g in gens] for a in range(M.left_algebra.n)]
    right = [[back(M.act_right(g, {b: 1})) for b in range(M.right_algebra.n)] for g in gens]
    red = Bimodule(M.left_algebra, M.right_algebra, R, left, right, check=False, name=M.name)
    return red, BimoduleHom(M, red, AbHom(G, R, to_c), check=False)
