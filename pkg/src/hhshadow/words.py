"""Direct sums of tensor words and linear maps between them.

A ``WordSpace`` is ``⊕_key G_{key,0} ⊗ ... ⊗ G_{key,k}`` over a finite set of
keys.  Basis elements are pairs ``(key, index tuple)``; a linear map is
described by a function sending each basis element to a dict of basis
elements with coefficients, and is turned into an ``AbHom`` in one pass.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Hashable, Sequence

from .exact import AbHom, FGAbGroup, IntMatrix
from .exact.abelian import tensor_many


class WordSpace:
    def __init__(self, summands: Sequence[tuple[Hashable, Sequence[FGAbGroup]]]):
        self.keys = []
        self.factors = {}
        self.offsets = {}
        self.sizes = {}
        off = 0
        for key, groups in summands:
            if key in self.factors:
                raise ValueError(f"duplicate summand {key!r}")
            self.keys.append(key)
            self.factors[key] = list(groups)
            sizes = [g.n_gens for g in groups]
            self.sizes[key] = sizes
            self.offsets[key] = off
            n = 1
            for s in sizes:
                n *= s
            off += n
        self.dim = off
        self._group = None

    @classmethod
    def single(cls, groups: Sequence[FGAbGroup]) -> "WordSpace":
        return cls([((), groups)])

    def index(self, key, tup) -> int:
        k = 0
        for t, s in zip(tup, self.sizes[key]):
            k = k * s + t
        return self.offsets[key] + k

    def basis(self):
        for key in self.keys:
            for tup in product(*(range(s) for s in self.sizes[key])):
                yield key, tup

    def group(self) -> FGAbGroup:
        if self._group is None:
            rels = []
            for key in self.keys:
                g = tensor_many(self.factors[key])
                off = self.offsets[key]
                for col in g.relations.columns():
                    rels.append({off + i: v for i, v in col.items()})
            self._group = FGAbGroup(self.dim, IntMatrix._trusted(self.dim, len(rels), rels))
        return self._group

    def map_to(self, target: "WordSpace", f: Callable, check: bool = False, source_group=None, target_group=None) -> AbHom:
        """The homomorphism whose value on basis ``(key, tup)`` is ``f(key, tup)``,
        a dict ``{(key', tup'): coeff}``."""
        cols = []
        index = target.index
        for key, tup in self.basis():
            col = {}
            for (k2, t2), c in f(key, tup).items():
                if c:
                    i = index(k2, t2)
                    s = col.get(i, 0) + c
                    if s:
                        col[i] = s
                    else:
                        del col[i]
            cols.append(col)
        m = IntMatrix._trusted(target.dim, self.dim, cols)
        return AbHom(source_group or self.group(), target_group or target.group(), m, check=check)


def expand(parts: Sequence[dict]) -> dict:
    """Multilinear expansion: a list of sparse vectors ``{i: c}`` becomes
    ``{(i_0, i_1, ...): c_0 c_1 ...}``."""
    out = {(): 1}
    for p in parts:
        nxt = {}
        for tup, c in out.items():
            for i, v in p.items():
                key = tup + (i,)
                nxt[key] = nxt.get(key, 0) + c * v
        out = {k: v for k, v in nxt.items() if v}
    return out


def basis_vec(i: int) -> dict:
    return {i: 1}
