"""Smith normal form over the integers by sparse elimination.

Pivots are chosen with unit entries first (columns in order of increasing
length, rows of least fill), then by least absolute value; Euclidean
reduction keeps coefficient growth small.  Transforms are tracked only on
request, so the diagonal-only path used for homology stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .matrix import IntMatrix


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _nearest_quotient(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


def _axpy(y: dict, k: int, x: dict) -> None:
    for i, v in x.items():
        s = y.get(i, 0) + k * v
        if s:
            y[i] = s
        else:
            y.pop(i, None)


def _lin(a: int, x: dict, b: int, y: dict) -> dict:
    out = {}
    if a:
        for i, v in x.items():
            out[i] = a * v
    if b:
        _axpy(out, b, y)
    return {i: v for i, v in out.items() if v}


def invariant_factors(diag: Sequence[int]) -> list[int]:
    """Turn arbitrary nonzero diagonal entries into a divisibility chain.

    Entries equal to one are dropped; the result is the invariant-factor
    list d_1 | d_2 | ... of the torsion group they present.
    """
    ds = sorted(abs(d) for d in diag if abs(d) > 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds = sorted(d for d in ds if d > 1)
    return ds


class _Elim:
    def __init__(self, m: IntMatrix, left: bool, right: bool):
        self.nrows, self.ncols = m.rows, m.cols
        self.cols = {j: dict(c) for j, c in enumerate(m.columns()) if c}
        self.rows: dict[int, dict] = {}
        for j, c in self.cols.items():
            for i, v in c.items():
                self.rows.setdefault(i, {})[j] = v
        self.left, self.right = left, right
        if left:
            self.U = [{i: 1} for i in range(m.rows)]  # row dicts
            self.Uinv = [{i: 1} for i in range(m.rows)]  # column dicts
        if right:
            self.V = [{j: 1} for j in range(m.cols)]  # column dicts
            self.Vinv = [{j: 1} for j in range(m.cols)]  # row dicts
        self.pivots: list[list[int]] = []

    # row r2 += q * row r
    def row_op(self, r2: int, r: int, q: int) -> None:
        if not q:
            return
        row2 = self.rows.setdefault(r2, {})
        for c, v in self.rows[r].items():
            col = self.cols[c]
            s = row2.get(c, 0) + q * v
            if s:
                row2[c] = s
                col[r2] = s
            else:
                row2.pop(c, None)
                col.pop(r2, None)
        if not row2:
            del self.rows[r2]
        if self.left:
            _axpy(self.U[r2], q, self.U[r])
            _axpy(self.Uinv[r], -q, self.Uinv[r2])

    # col c2 += q * col c
    def col_op(self, c2: int, c: int, q: int) -> None:
        if not q:
            return
        col2 = self.cols.setdefault(c2, {})
        for r, v in self.cols[c].items():
            row = self.rows[r]
            s = col2.get(r, 0) + q * v
            if s:
                col2[r] = s
                row[c2] = s
            else:
                col2.pop(r, None)
                row.pop(c2, None)
        if not col2:
            del self.cols[c2]
        if self.right:
            _axpy(self.V[c2], q, self.V[c])
            _axpy(self.Vinv[c], -q, self.Vinv[c2])

    def _settle(self, r: int, c: int) -> tuple[int, int]:
        """Clear row r and column c around a pivot; may move the pivot."""
        while True:
            p = self.cols[c][r]
            for r2 in [x for x in self.cols[c] if x != r]:
                self.row_op(r2, r, -_nearest_quotient(self.cols[c][r2], p))
            rest = [x for x in self.cols[c] if x != r]
            if rest:
                r = min(rest + [r], key=lambda x: abs(self.cols[c][x]))
                continue
            for c2 in [x for x in self.rows[r] if x != c]:
                self.col_op(c2, c, -_nearest_quotient(self.rows[r][c2], p))
            rest = [x for x in self.rows[r] if x != c]
            if rest:
                c = min(rest + [c], key=lambda x: abs(self.rows[r][x]))
                continue
            return r, c

    def _take(self, r: int, c: int) -> None:
        r, c = self._settle(r, c)
        p = self.cols[c][r]
        del self.cols[c]
        del self.rows[r]
        self.pivots.append([r, c, p])

    def run(self) -> None:
        # unit pivots, cheapest columns first
        progress = True
        while progress and self.cols:
            progress = False
            for c in sorted(self.cols, key=lambda j: len(self.cols[j])):
                col = self.cols.get(c)
                if not col:
                    continue
                best = None
                for r, v in col.items():
                    if v == 1 or v == -1:
                        n = len(self.rows[r])
                        if best is None or n < best[0]:
                            best = (n, r)
                            if n == 1:
                                break
                if best is not None:
                    self._take(best[1], c)
                    progress = True
        # general pivots by least absolute value
        while self.cols:
            best = None
            for c, col in self.cols.items():
                for r, v in col.items():
                    a = abs(v)
                    if best is None or a < best[0]:
                        best = (a, r, c)
                if best is not None and best[0] == 1:
                    break
            self._take(best[1], best[2])

    def normalize(self) -> None:
        """Make pivots positive and put them in a divisibility chain."""
        for piv in self.pivots:
            if piv[2] < 0:
                piv[2] = -piv[2]
                r = piv[0]
                if self.left:
                    self.U[r] = {k: -v for k, v in self.U[r].items()}
                    self.Uinv[r] = {k: -v for k, v in self.Uinv[r].items()}
        # units first keeps the quadratic pass short
        self.pivots.sort(key=lambda t: t[2])
        piv = self.pivots
        n = len(piv)
        start = 0
        while start < n and piv[start][2] == 1:
            start += 1
        for i in range(start, n):
            for j in range(i + 1, n):
                a, b = piv[i][2], piv[j][2]
                if b % a == 0:
                    continue
                g, s, t = egcd(a, b)
                r1, c1 = piv[i][0], piv[i][1]
                r2, c2 = piv[j][0], piv[j][1]
                bg, ag = b // g, a // g
                if self.left:
                    u1, u2 = self.U[r1], self.U[r2]
                    self.U[r1], self.U[r2] = _lin(s, u1, t, u2), _lin(-bg, u1, ag, u2)
                    w1, w2 = self.Uinv[r1], self.Uinv[r2]
                    self.Uinv[r1], self.Uinv[r2] = _lin(ag, w1, bg, w2), _lin(-t, w1, s, w2)
                if self.right:
                    v1, v2 = self.V[c1], self.V[c2]
                    self.V[c1], self.V[c2] = _lin(1, v1, 1, v2), _lin(-t * bg, v1, s * ag, v2)
                    z1, z2 = self.Vinv[c1], self.Vinv[c2]
                    self.Vinv[c1], self.Vinv[c2] = _lin(s * ag, z1, t * bg, z2), _lin(-1, z1, 1, z2)
                piv[i][2], piv[j][2] = g, a * b // g


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ m @ V == D`` with ``D`` diagonal in divisibility order.

    ``Uinv`` and ``Vinv`` are the exact inverses.  Transforms that were not
    requested are ``None``.
    """

    D: IntMatrix
    diag: tuple[int, ...]
    U: IntMatrix | None
    Uinv: IntMatrix | None
    V: IntMatrix | None
    Vinv: IntMatrix | None

    @property
    def rank(self) -> int:
        return len(self.diag)


def _rows_to_matrix(nrows: int, ncols: int, rows: Sequence[dict]) -> IntMatrix:
    cols = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            cols[j][i] = v
    return IntMatrix._trusted(nrows, ncols, cols)


def smith_decompose(m: IntMatrix, left: bool = True, right: bool = True) -> SmithDecomposition:
    e = _Elim(m, left, right)
    e.run()
    e.normalize()
    rank = len(e.pivots)
    prow = [p[0] for p in e.pivots]
    pcol = [p[1] for p in e.pivots]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [i for i in range(m.rows) if i not in used_r]
    col_order = pcol + [j for j in range(m.cols) if j not in used_c]
    diag = tuple(p[2] for p in e.pivots)
    D = IntMatrix._trusted(m.rows, m.cols, [{j: diag[j]} if j < rank else {} for j in range(m.cols)])
    U = Uinv = V = Vinv = None
    if left:
        U = _rows_to_matrix(m.rows, m.rows, [e.U[r] for r in row_order])
        Uinv = IntMatrix._trusted(m.rows, m.rows, [e.Uinv[r] for r in row_order])
    if right:
        V = IntMatrix._trusted(m.cols, m.cols, [e.V[c] for c in col_order])
        Vinv = _rows_to_matrix(m.cols, m.cols, [e.Vinv[c] for c in col_order])
    return SmithDecomposition(D, diag, U, Uinv, V, Vinv)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``, U and V unimodular,
    and ``D`` diagonal with nonnegative entries d_1 | d_2 | ...

    >>> U, D, V = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> D.diagonal()
    [2, 4]
    """
    s = smith_decompose(m)
    return s.U, s.D, s.V


def elementary_diagonal(m: IntMatrix) -> list[int]:
    """Absolute values of the elimination pivots (no transforms).

    Their count is the rank of ``m``; ``invariant_factors`` of them gives the
    torsion of ``coker m``.
    """
    e = _Elim(m, False, False)
    e.run()
    return [abs(p[2]) for p in e.pivots]


def rank(m: IntMatrix) -> int:
    return len(elementary_diagonal(m))
