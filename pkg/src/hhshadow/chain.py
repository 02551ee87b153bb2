"""Chain complexes of finitely generated abelian groups and their homology.

Two independent routes compute homology:

* ``homology_canonical`` rewrites every group as a sum of cyclic groups,
  resolves each by the two-term complex ``Z^r --diag--> Z^n`` and takes the
  homology of the resulting total complex of free groups.  Only the
  elimination pivots of the total differentials are needed.
* ``homology_group`` works with lattices directly (kernel basis, boundary
  coordinates) and returns a presented group with explicit cycle
  representatives, which is what induced maps need.
"""

from __future__ import annotations

import threading

from .exact import AbHom, FGAbGroup, IntMatrix, elementary_diagonal, invariant_factors
from .exact.abelian import preimage_lattice, solve_in_lattice, format_canonical


class TruncationError(ValueError):
    pass


class ChainComplex:
    """Groups ``C_0 .. C_T`` with differentials ``d_q : C_q -> C_{q-1}``.

    When ``truncated`` is set the complex is the bottom of a longer one, so
    homology is only reported in degrees ``<= T - 1``.
    """

    def __init__(self, groups, diffs, truncated: bool = True, check: bool = True):
        self.groups = list(groups)
        self.T = len(self.groups) - 1
        self.diffs = [None] + list(diffs)
        if len(self.diffs) != len(self.groups):
            raise ValueError("need one differential per positive degree")
        for q in range(1, self.T + 1):
            d = self.diffs[q]
            if d.source != self.groups[q] or d.target != self.groups[q - 1]:
                raise ValueError(f"differential {q} has the wrong source or target")
        self.truncated = truncated
        self._lock = threading.Lock()
        self._canon = {}
        self._lattice = {}
        self._pivots = {}
        self._cyc = None
        if check:
            self.check_square_zero()

    def check_square_zero(self) -> None:
        for q in range(2, self.T + 1):
            comp = self.diffs[q - 1] @ self.diffs[q]
            j = comp.first_nonzero_generator()
            if j is not None:
                raise ValueError(f"d_{q - 1} d_{q} is nonzero on generator {j}")

    def valid_degrees(self) -> range:
        return range(0, self.T if self.truncated else self.T + 1)

    def _check_degree(self, q: int) -> None:
        if q < 0:
            raise ValueError("negative degree")
        if q not in self.valid_degrees():
            raise TruncationError(f"degree {q} is beyond the valid range (truncation {self.T})")

    def boundary(self, q: int) -> AbHom | None:
        if 1 <= q <= self.T:
            return self.diffs[q]
        return None

    # -- route 1: total complex of cyclic resolutions ---------------------
    def _cyclic_data(self):
        if self._cyc is not None:
            return self._cyc
        orders, dprime = [], [None]
        for g in self.groups:
            orders.append(g.orders)
        for q in range(1, self.T + 1):
            src, tgt = self.groups[q], self.groups[q - 1]
            m = tgt.to_cyc @ self.diffs[q].matrix @ src.from_cyc
            o = orders[q - 1]
            m = IntMatrix._trusted(m.rows, m.cols, [{i: (v % o[i] if o[i] else v) for i, v in c.items() if (v % o[i] if o[i] else v)} for c in m.columns()])
            dprime.append(m)
        # an empty degree above the top carries the relations of C_T
        orders.append([])
        dprime.append(IntMatrix.zeros(len(orders[self.T]), 0))
        tors = []
        for o in orders:
            tors.append([i for i, x in enumerate(o) if x])
        self._cyc = (orders, dprime, tors)
        return self._cyc

    def _rel(self, k: int) -> IntMatrix:
        orders, _, tors = self._cyclic_data()
        return IntMatrix._trusted(len(orders[k]), len(tors[k]), [{i: orders[k][i]} for i in tors[k]])

    def _lift(self, k: int) -> IntMatrix:
        """The map on relation generators covering d_k."""
        orders, dprime, tors = self._cyclic_data()
        pos = {i: a for a, i in enumerate(tors[k - 1])}
        ot, os_ = orders[k - 1], orders[k]
        cols = []
        for j in tors[k]:
            col = {}
            for i, v in dprime[k].column(j).items():
                w = v * os_[j]
                if ot[i] == 0:
                    if w:
                        raise ArithmeticError("differential does not respect relations")
                    continue
                qv, r = divmod(w, ot[i])
                if r:
                    raise ArithmeticError("differential does not respect relations")
                if qv:
                    col[pos[i]] = qv
            cols.append(col)
        return IntMatrix._trusted(len(tors[k - 1]), len(tors[k]), cols)

    def _homotopy(self, k: int) -> IntMatrix:
        """h_k with R_{k-2} h_k = d_{k-1} d_k on free generators."""
        orders, dprime, tors = self._cyclic_data()
        comp = dprime[k - 1] @ dprime[k]
        ot = orders[k - 2]
        pos = {i: a for a, i in enumerate(tors[k - 2])}
        cols = []
        for c in comp.columns():
            col = {}
            for i, v in c.items():
                if ot[i] == 0:
                    raise ArithmeticError(f"d_{k - 1} d_{k} is nonzero")
                qv, r = divmod(v, ot[i])
                if r:
                    raise ArithmeticError(f"d_{k - 1} d_{k} is nonzero")
                col[pos[i]] = qv
            cols.append(col)
        return IntMatrix._trusted(len(tors[k - 2]), comp.cols, cols)

    def total_dimension(self, k: int) -> int:
        orders, _, tors = self._cyclic_data()
        return len(orders[k]) + (len(tors[k - 1]) if k >= 1 else 0)

    def total_differential(self, k: int) -> IntMatrix:
        orders, dprime, tors = self._cyclic_data()
        n_prev = len(orders[k - 1])
        r_prev2 = len(tors[k - 2]) if k >= 2 else 0
        top = dprime[k]
        if k >= 2:
            bottom_x = -self._homotopy(k)
            bottom = bottom_x.hstack(-self._lift(k - 1))
            top = top.hstack(self._rel(k - 1))
            return top.vstack(bottom)
        top = top.hstack(self._rel(0))
        assert r_prev2 == 0 and top.rows == n_prev
        return top

    def _diag(self, k: int) -> list[int]:
        with self._lock:
            if k in self._pivots:
                return self._pivots[k]
        if k < 1 or k > self.T + 1:
            piv = []
        else:
            piv = elementary_diagonal(self.total_differential(k))
        with self._lock:
            self._pivots[k] = piv
        return piv

    def homology_canonical(self, q: int) -> tuple[int, list[int]]:
        self._check_degree(q)
        with self._lock:
            if q in self._canon:
                return self._canon[q]
        dim = self.total_dimension(q)
        out_piv = self._diag(q)
        in_piv = self._diag(q + 1)
        res = (dim - len(out_piv) - len(in_piv), invariant_factors(in_piv))
        with self._lock:
            self._canon[q] = res
        return res

    # -- route 2: lattices ---------------------------------------------------
    def homology_group(self, q: int) -> "HomologyGroup":
        self._check_degree(q)
        with self._lock:
            if q in self._lattice:
                return self._lattice[q]
        mid = self.groups[q]
        if q >= 1:
            cycles = preimage_lattice(self.diffs[q].matrix, self.groups[q - 1])
        else:
            cycles = IntMatrix.identity(mid.n_gens)
        gens = list(mid.relations.columns())
        if q + 1 <= self.T:
            gens += list(self.diffs[q + 1].matrix.columns())
        rels = solve_in_lattice(cycles, gens)
        if rels is None:
            raise ValueError("boundaries are not cycles")
        h = HomologyGroup(FGAbGroup(cycles.cols, IntMatrix._trusted(cycles.cols, len(rels), rels)), cycles, self, q)
        with self._lock:
            self._lattice[q] = h
        return h


class HomologyGroup:
    """``H_q`` as a presented group; generator k is the class of column k of ``cycles``."""

    def __init__(self, group: FGAbGroup, cycles: IntMatrix, complex_: ChainComplex, degree: int):
        self.group = group
        self.cycles = cycles
        self.complex = complex_
        self.degree = degree

    def canonical_form(self):
        return self.group.canonical_form()

    def __str__(self) -> str:
        return str(self.group)

    def class_of(self, cycle) -> dict:
        """Coordinates of a cycle (given in chain coordinates) in the homology presentation."""
        sol = solve_in_lattice(self.cycles, [cycle if isinstance(cycle, dict) else {i: v for i, v in enumerate(cycle) if v}])
        if sol is None:
            raise ValueError("not a cycle")
        return sol[0]

    def induced(self, chain_map: IntMatrix, target: "HomologyGroup") -> AbHom:
        """Map induced on homology by a degree-preserving chain map at this degree."""
        images = [chain_map.apply(c) for c in self.cycles.columns()]
        sol = solve_in_lattice(target.cycles, images)
        if sol is None:
            raise ValueError("the map does not send cycles to cycles")
        return AbHom(self.group, target.group, IntMatrix._trusted(target.group.n_gens, self.group.n_gens, sol))


def check_chain_map(source: ChainComplex, target: ChainComplex, maps, upto: int | None = None) -> list[str]:
    """Failures of ``f_{q-1} d_q = d_q f_q``; empty when the squares commute."""
    upto = min(source.T, target.T) if upto is None else upto
    bad = []
    for q in range(1, upto + 1):
        lhs = maps[q - 1] @ source.diffs[q]
        rhs = target.diffs[q] @ maps[q]
        j = (lhs - rhs).first_nonzero_generator()
        if j is not None:
            bad.append(f"degree {q}: square fails on generator {j}")
    return bad


def format_homology(forms, symbol: str = "H") -> str:
    return ", ".join(f"{symbol}_{q} = {format_canonical(*f)}" for q, f in forms)
