"""Finitely generated abelian groups as presentations, and their homomorphisms.

A group is ``Z^n`` modulo the column span of an integer relation matrix.
Its structure (a cyclic decomposition and the coordinate change into it) is
computed lazily from a Smith decomposition of the relations; presentations
whose relations are all monomial columns skip the elimination entirely.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence

from .matrix import IntMatrix
from .smith import invariant_factors, smith_decompose


class WellDefinednessError(ValueError):
    pass


def _dense(vec, n: int) -> list[int]:
    if isinstance(vec, Mapping):
        out = [0] * n
        for i, v in vec.items():
            out[i] = v
        return out
    vec = [int(v) for v in vec]
    if len(vec) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(vec)}")
    return vec


class _Structure:
    """Coordinates into a cyclic decomposition Z/o_1 + ... (o_i = 0 means Z)."""

    __slots__ = ("orders", "to_cyc", "from_cyc")

    def __init__(self, orders, to_cyc, from_cyc):
        self.orders = orders
        self.to_cyc = to_cyc
        self.from_cyc = from_cyc


def _monomial_orders(n: int, rels: IntMatrix) -> list[int] | None:
    orders = [0] * n
    for col in rels.columns():
        if len(col) > 1:
            return None
        for i, v in col.items():
            orders[i] = gcd(orders[i], v)
    return orders


class FGAbGroup:
    """``Z^n_gens / span(columns of relations)``."""

    __slots__ = ("n_gens", "relations", "_struct", "_hash", "labels")

    def __init__(self, n_gens: int, relations: IntMatrix | Sequence[Sequence[int]] | None = None, labels=None):
        if relations is None:
            relations = IntMatrix.zeros(n_gens, 0)
        elif not isinstance(relations, IntMatrix):
            # a list of relators, each a vector in Z^n_gens
            relations = IntMatrix.from_columns(n_gens, [list(r) for r in relations])
        if relations.rows != n_gens:
            raise ValueError(f"relation matrix has {relations.rows} rows for {n_gens} generators")
        self.n_gens = n_gens
        self.relations = relations
        self.labels = labels
        self._struct = None
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def free(cls, n: int) -> "FGAbGroup":
        return cls(n)

    @classmethod
    def cyclic(cls, order: int) -> "FGAbGroup":
        if order == 0:
            return cls(1)
        return cls(1, IntMatrix.from_rows([[order]]))

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FGAbGroup":
        """Direct sum of cyclic groups; order 0 means a copy of Z."""
        n = len(orders)
        cols = [{i: o} for i, o in enumerate(orders) if o != 0]
        return cls(n, IntMatrix._trusted(n, len(cols), cols))

    @classmethod
    def trivial(cls) -> "FGAbGroup":
        return cls(0)

    # -- structure -------------------------------------------------------
    def _structure(self) -> _Structure:
        s = self._struct
        if s is not None:
            return s
        n = self.n_gens
        mono = _monomial_orders(n, self.relations)
        if mono is not None:
            keep = [i for i in range(n) if abs(mono[i]) != 1]
            orders = [abs(mono[i]) for i in keep]
            cols = [{} for _ in range(n)]
            for k, i in enumerate(keep):
                cols[i] = {k: 1}
            to_cyc = IntMatrix._trusted(len(keep), n, cols)
            from_cyc = IntMatrix._trusted(n, len(keep), [{i: 1} for i in keep])
        else:
            sd = smith_decompose(self.relations, left=True, right=False)
            d = list(sd.diag) + [0] * (n - sd.rank)
            keep = [i for i in range(n) if d[i] != 1]
            orders = [d[i] for i in keep]
            to_cyc = sd.U.select_rows(keep)
            from_cyc = sd.Uinv.select_columns(keep)
        s = _Structure(orders, to_cyc, from_cyc)
        # benign race: every thread computes the same value
        self._struct = s
        return s

    @property
    def orders(self) -> list[int]:
        """Orders of the cyclic coordinates (0 for a free coordinate)."""
        return list(self._structure().orders)

    @property
    def to_cyc(self) -> IntMatrix:
        return self._structure().to_cyc

    @property
    def from_cyc(self) -> IntMatrix:
        return self._structure().from_cyc

    def canonical_form(self) -> tuple[int, list[int]]:
        """``(free_rank, [d_1, d_2, ...])`` with d_1 | d_2 | ... and each d_i >= 2."""
        orders = self._structure().orders
        return sum(1 for o in orders if o == 0), invariant_factors([o for o in orders if o])

    def canonical_string(self) -> str:
        return format_canonical(*self.canonical_form())

    def __str__(self) -> str:
        return self.canonical_string()

    def __repr__(self) -> str:
        return f"FGAbGroup({self.n_gens} gens, {self.relations.cols} rels: {self.canonical_string()})"

    def is_trivial(self) -> bool:
        return not self._structure().orders

    def is_finite(self) -> bool:
        return all(o for o in self._structure().orders)

    def order(self) -> int | None:
        """Cardinality, or None for an infinite group."""
        out = 1
        for o in self._structure().orders:
            if o == 0:
                return None
            out *= o
        return out

    def isomorphic(self, other: "FGAbGroup") -> bool:
        return self.canonical_form() == other.canonical_form()

    # -- elements --------------------------------------------------------
    def reduce_cyc(self, y: Mapping[int, int]) -> tuple[int, ...]:
        orders = self._structure().orders
        out = [0] * len(orders)
        for i, v in y.items():
            o = orders[i]
            out[i] = v % o if o else v
        return tuple(out)

    def normal_form(self, x) -> tuple[int, ...]:
        """Reduced coordinates in the cyclic decomposition; equal iff the elements are."""
        s = self._structure()
        if isinstance(x, Mapping):
            return self.reduce_cyc(s.to_cyc.apply(x))
        return self.reduce_cyc(s.to_cyc.apply(_dense(x, self.n_gens)))

    def is_zero(self, x) -> bool:
        return not any(self.normal_form(x))

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, [0] * self.n_gens)

    def gen(self, i: int) -> "Element":
        return Element(self, {i: 1})

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(self.n_gens)]

    def canonical_lift(self, x) -> dict:
        """A fixed representative of the class of ``x`` (same for equal classes)."""
        return self._structure().from_cyc.apply(list(self.normal_form(x)))

    def cyclic_generators(self) -> list[tuple[dict, int]]:
        """Representatives of the cyclic summands with their orders."""
        s = self._structure()
        return [(s.from_cyc.column(k), o) for k, o in enumerate(s.orders)]

    # -- comparison ------------------------------------------------------
    def same_presentation(self, other: "FGAbGroup") -> bool:
        return self.n_gens == other.n_gens and self.relations == other.relations

    def __eq__(self, other) -> bool:
        if not isinstance(other, FGAbGroup):
            return NotImplemented
        return self is other or self.same_presentation(other)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_gens, self.relations))
        return self._hash

    def to_json(self) -> dict:
        return {"gens": self.n_gens, "rels": [[c.get(i, 0) for i in range(self.n_gens)] for c in self.relations.columns()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FGAbGroup":
        n = int(obj["gens"])
        rels = obj.get("rels", [])
        return cls(n, IntMatrix.from_columns(n, [list(map(int, r)) for r in rels]))


def format_canonical(free_rank: int, factors: Sequence[int]) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in factors)
    return " + ".join(parts) if parts else "0"


class Element:
    __slots__ = ("group", "coords")

    def __init__(self, group: FGAbGroup, coords):
        self.group = group
        if isinstance(coords, Mapping):
            self.coords = tuple(_dense(coords, group.n_gens))
        else:
            self.coords = tuple(_dense(coords, group.n_gens))

    @property
    def normal_form(self) -> tuple[int, ...]:
        return self.group.normal_form(self.coords)

    def is_zero(self) -> bool:
        return self.group.is_zero(self.coords)

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.group, [-a for a in self.coords])

    def __rmul__(self, k: int) -> "Element":
        return Element(self.group, [k * a for a in self.coords])

    def _check(self, other: "Element") -> None:
        if other.group != self.group:
            raise ValueError("elements of different groups")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.group == other.group and self.normal_form == other.normal_form

    def __hash__(self) -> int:
        return hash(self.normal_form)

    def __repr__(self) -> str:
        return f"Element({list(self.coords)})"


class AbHom:
    """A homomorphism given by an integer matrix on generators.

    Construction verifies that every relator of the source maps into the
    relation lattice of the target.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FGAbGroup, target: FGAbGroup, matrix: IntMatrix | Sequence[Sequence[int]], check: bool = True):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix, ncols=source.n_gens) if len(matrix) else IntMatrix.zeros(0, source.n_gens)
        if matrix.shape != (target.n_gens, source.n_gens):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.n_gens}x{source.n_gens}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            for k, rel in enumerate(source.relations.columns()):
                if not target.is_zero(matrix.apply(rel)):
                    raise WellDefinednessError(f"relator {k} of the source ({dict(rel)}) does not map to zero in the target")

    @classmethod
    def identity(cls, g: FGAbGroup) -> "AbHom":
        return cls(g, g, IntMatrix.identity(g.n_gens), check=False)

    @classmethod
    def zero(cls, s: FGAbGroup, t: FGAbGroup) -> "AbHom":
        return cls(s, t, IntMatrix.zeros(t.n_gens, s.n_gens), check=False)

    def __call__(self, x):
        if isinstance(x, Element):
            return Element(self.target, self.matrix.apply(x.coords))
        return self.matrix.apply(x if isinstance(x, Mapping) else _dense(x, self.source.n_gens))

    def __matmul__(self, other: "AbHom") -> "AbHom":
        if other.target != self.source:
            raise ValueError("composing homomorphisms with mismatched middle group")
        return AbHom(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "AbHom") -> "AbHom":
        self._same_type(other)
        return AbHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "AbHom") -> "AbHom":
        self._same_type(other)
        return AbHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> "AbHom":
        return AbHom(self.source, self.target, -self.matrix, check=False)

    def __rmul__(self, k: int) -> "AbHom":
        return AbHom(self.source, self.target, self.matrix.scale(k), check=False)

    def _same_type(self, other: "AbHom") -> None:
        if other.source != self.source or other.target != self.target:
            raise ValueError("homomorphisms have different source or target")

    def image_normal_forms(self) -> list[tuple[int, ...]]:
        return [self.target.normal_form(c) for c in self.matrix.columns()]

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in self.matrix.columns())

    def first_nonzero_generator(self) -> int | None:
        for j, c in enumerate(self.matrix.columns()):
            if not self.target.is_zero(c):
                return j
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbHom):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def __repr__(self) -> str:
        return f"AbHom({self.source} -> {self.target}, {self.matrix!r})"

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_rows()}


# -- lattice helpers -------------------------------------------------------

def lattice_kernel(m: IntMatrix) -> IntMatrix:
    """A basis (as columns) of the integer kernel of ``m``."""
    sd = smith_decompose(m, left=False, right=True)
    return sd.V.select_columns(range(sd.rank, m.cols))


def solve_in_lattice(basis: IntMatrix, vecs: Iterable[Mapping[int, int]]) -> list[dict] | None:
    """For each vector v, some integer x with ``basis @ x == v``; None if some
    vector is not in the column lattice.  Unique when the columns are independent."""
    sd = smith_decompose(basis, left=True, right=True)
    out = []
    for v in vecs:
        y = sd.U.apply(v)
        w = {}
        for i, val in y.items():
            if i >= sd.rank:
                return None
            q, r = divmod(val, sd.diag[i])
            if r:
                return None
            if q:
                w[i] = q
        out.append(sd.V.apply(w))
    return out


def preimage_lattice(matrix: IntMatrix, target: FGAbGroup) -> IntMatrix:
    """Basis of {x in Z^n : matrix x = 0 in target}."""
    s = target._structure()
    a = s.to_cyc @ matrix
    tors = [(i, o) for i, o in enumerate(s.orders) if o]
    d = IntMatrix._trusted(a.rows, len(tors), [{i: o} for i, o in tors])
    k = lattice_kernel(a.hstack(d))
    return k.select_rows(range(matrix.cols))


def kernel(f: AbHom) -> tuple[FGAbGroup, AbHom]:
    """Kernel of ``f`` with its inclusion into the source."""
    basis = preimage_lattice(f.matrix, f.target)
    rels = solve_in_lattice(basis, f.source.relations.columns())
    if rels is None:
        raise WellDefinednessError("source relators are not in the kernel lattice")
    g = FGAbGroup(basis.cols, IntMatrix._trusted(basis.cols, len(rels), rels))
    return g, AbHom(g, f.source, basis, check=False)


def image(f: AbHom) -> tuple[FGAbGroup, AbHom]:
    """Image of ``f`` presented as source / kernel, with its inclusion into the target."""
    k = preimage_lattice(f.matrix, f.target)
    g = FGAbGroup(f.source.n_gens, f.source.relations.hstack(k))
    return g, AbHom(g, f.target, f.matrix, check=False)


def cokernel(f: AbHom) -> tuple[FGAbGroup, AbHom]:
    """Cokernel of ``f`` with the projection from the target."""
    g = FGAbGroup(f.target.n_gens, f.target.relations.hstack(f.matrix))
    return g, AbHom(f.target, g, IntMatrix.identity(f.target.n_gens), check=False)


def tensor(g: FGAbGroup, h: FGAbGroup) -> FGAbGroup:
    """``g ⊗ h`` with generator ``e_i ⊗ f_j`` at index ``i * h.n_gens + j``."""
    rel = g.relations.kron(IntMatrix.identity(h.n_gens)).hstack(IntMatrix.identity(g.n_gens).kron(h.relations))
    return FGAbGroup(g.n_gens * h.n_gens, rel)


def tensor_hom(f: AbHom, g: AbHom, source: FGAbGroup | None = None, target: FGAbGroup | None = None) -> AbHom:
    source = source or tensor(f.source, g.source)
    target = target or tensor(f.target, g.target)
    return AbHom(source, target, f.matrix.kron(g.matrix), check=False)


def tensor_many(groups: Sequence[FGAbGroup]) -> FGAbGroup:
    out = FGAbGroup(1)
    for g in groups:
        out = tensor(out, g)
    return out


def direct_sum(*groups: FGAbGroup) -> tuple[FGAbGroup, list[AbHom], list[AbHom]]:
    """Direct sum with its injections and projections."""
    s = FGAbGroup(sum(g.n_gens for g in groups), IntMatrix.block_diag(*(g.relations for g in groups)))
    inj, proj = [], []
    off = 0
    for g in groups:
        inj.append(AbHom(g, s, IntMatrix._trusted(s.n_gens, g.n_gens, [{off + i: 1} for i in range(g.n_gens)]), check=False))
        pcols = [{} for _ in range(s.n_gens)]
        for i in range(g.n_gens):
            pcols[off + i] = {i: 1}
        proj.append(AbHom(s, g, IntMatrix._trusted(g.n_gens, s.n_gens, pcols), check=False))
        off += g.n_gens
    return s, inj, proj


def hom_direct_sum(*fs: AbHom) -> AbHom:
    s = direct_sum(*(f.source for f in fs))[0]
    t = direct_sum(*(f.target for f in fs))[0]
    return AbHom(s, t, IntMatrix.block_diag(*(f.matrix for f in fs)), check=False)


def is_injective(f: AbHom) -> bool:
    return kernel(f)[0].is_trivial()


def is_surjective(f: AbHom) -> bool:
    return cokernel(f)[0].is_trivial()


def is_isomorphism(f: AbHom) -> bool:
    return is_surjective(f) and is_injective(f)


def check_composable(d_in: AbHom, d_out: AbHom) -> None:
    if d_in.target != d_out.source:
        raise ValueError("d_in lands in a different group than d_out starts from")
    comp = d_out @ d_in
    j = comp.first_nonzero_generator()
    if j is not None:
        raise ValueError(f"d_out∘d_in is nonzero on source generator {j}: image {comp.matrix.column(j)}")


def homology_at(d_in: AbHom, d_out: AbHom) -> FGAbGroup:
    """``ker(d_out) / im(d_in)`` presented on a basis of the kernel lattice."""
    check_composable(d_in, d_out)
    return homology_with_inclusion(d_in, d_out)[0]


def homology_with_inclusion(d_in: AbHom, d_out: AbHom) -> tuple[FGAbGroup, IntMatrix]:
    """Homology together with the kernel basis (columns are cycles in the middle group)."""
    mid = d_in.target
    basis = preimage_lattice(d_out.matrix, d_out.target)
    gens = list(mid.relations.columns()) + list(d_in.matrix.columns())
    rels = solve_in_lattice(basis, gens)
    if rels is None:
        raise ValueError("boundaries are not cycles")
    return FGAbGroup(basis.cols, IntMatrix._trusted(basis.cols, len(rels), rels)), basis


def inverse(f: AbHom) -> AbHom:
    """Inverse of an isomorphism."""
    if not is_isomorphism(f):
        raise ValueError("homomorphism is not invertible")
    n = f.source.n_gens
    a = f.matrix.hstack(f.target.relations)
    sols = solve_in_lattice(a, [{j: 1} for j in range(f.target.n_gens)])
    cols = [{i: v for i, v in s.items() if i < n} for s in sols]
    return AbHom(f.target, f.source, IntMatrix._trusted(n, f.target.n_gens, cols))
