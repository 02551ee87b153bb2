"""Sparse integer matrices with arbitrary-precision entries.

Columns are stored as ``{row: value}`` dicts holding nonzero entries only.
Instances are treated as immutable; every operation returns a new matrix.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

Column = dict


class IntMatrix:
    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, columns: Sequence[Mapping[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if columns is None:
            data = tuple({} for _ in range(cols))
        else:
            if len(columns) != cols:
                raise ValueError(f"expected {cols} columns, got {len(columns)}")
            data = []
            for col in columns:
                clean = {}
                for r, v in col.items():
                    if not 0 <= r < rows:
                        raise IndexError(f"row index {r} out of range for {rows} rows")
                    v = int(v)
                    if v:
                        clean[r] = v
                data.append(clean)
            data = tuple(data)
        self._data = data
        self._hash = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: Sequence[dict]) -> "IntMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = tuple(data)
        m._hash = None
        return m

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        data = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged row list")
            for j, v in enumerate(row):
                if v:
                    data[j][i] = int(v)
        return cls._trusted(nrows, ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, int] | Sequence[int]]) -> "IntMatrix":
        data = []
        for col in columns:
            if isinstance(col, Mapping):
                data.append(col)
            else:
                if len(col) != nrows:
                    raise ValueError("column length mismatch")
                data.append({i: v for i, v in enumerate(col) if v})
        return cls(nrows, len(data), data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._trusted(rows, cols, [{} for _ in range(cols)])

    @classmethod
    def scalar(cls, n: int, k: int) -> "IntMatrix":
        if k == 0:
            return cls.zeros(n, n)
        return cls._trusted(n, n, [{i: k} for i in range(n)])

    # -- access ----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> dict:
        """The j-th column as a fresh ``{row: value}`` dict."""
        return dict(self._data[j])

    def columns(self) -> tuple[dict, ...]:
        return self._data

    def entry(self, i: int, j: int) -> int:
        return self._data[j].get(i, 0)

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._data):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._data)

    def is_zero(self) -> bool:
        return all(not c for c in self._data)

    def is_diagonal(self) -> bool:
        return all(set(c) <= {j} for j, c in enumerate(self._data))

    def diagonal(self) -> list[int]:
        return [self._data[j].get(j, 0) for j in range(min(self.rows, self.cols))]

    # -- algebra ---------------------------------------------------------
    def apply(self, vec: Mapping[int, int] | Sequence[int]) -> dict:
        """Multiply a sparse or dense vector; returns a sparse dict."""
        out: dict[int, int] = {}
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        for j, x in items:
            if not x:
                continue
            for i, v in self._data[j].items():
                s = out.get(i, 0) + v * x
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def apply_dense(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for i, v in self.apply(vec).items():
            out[i] = v
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix._trusted(self.rows, other.cols, [self.apply(c) for c in other._data])

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = []
        for a, b in zip(self._data, other._data):
            c = dict(a)
            for i, v in b.items():
                s = c.get(i, 0) + sign * v
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            data.append(c)
        return IntMatrix._trusted(self.rows, self.cols, data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        if k == 0:
            return IntMatrix.zeros(self.rows, self.cols)
        return IntMatrix._trusted(self.rows, self.cols, [{i: k * v for i, v in c.items()} for c in self._data])

    def __rmul__(self, k: int) -> "IntMatrix":
        return self.scale(k)

    def __pow__(self, n: int) -> "IntMatrix":
        if self.rows != self.cols or n < 0:
            raise ValueError("powers need a square matrix and n >= 0")
        result = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self) -> "IntMatrix":
        data = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self._data):
            for i, v in col.items():
                data[i][j] = v
        return IntMatrix._trusted(self.cols, self.rows, data)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        data = list(self._data)
        for o in others:
            if o.rows != self.rows:
                raise ValueError("hstack row mismatch")
            data.extend(o._data)
        return IntMatrix._trusted(self.rows, len(data), data)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        data = [dict(c) for c in self._data]
        offset = self.rows
        for o in others:
            if o.cols != self.cols:
                raise ValueError("vstack column mismatch")
            for j, col in enumerate(o._data):
                for i, v in col.items():
                    data[j][i + offset] = v
            offset += o.rows
        return IntMatrix._trusted(offset, self.cols, data)

    @staticmethod
    def block_diag(*blocks: "IntMatrix") -> "IntMatrix":
        data = []
        roff = 0
        for b in blocks:
            for col in b._data:
                data.append({i + roff: v for i, v in col.items()})
            roff += b.rows
        return IntMatrix._trusted(roff, len(data), data)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; index (i, k) of the result is ``i * other.rows + k``."""
        data = []
        for a in self._data:
            for b in other._data:
                col = {}
                for i, x in a.items():
                    base = i * other.rows
                    for k, y in b.items():
                        col[base + k] = x * y
                data.append(col)
        return IntMatrix._trusted(self.rows * other.rows, self.cols * other.cols, data)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix._trusted(self.rows, len(idx), [self._data[j] for j in idx])

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        pos = {r: k for k, r in enumerate(idx)}
        data = [{pos[i]: v for i, v in c.items() if i in pos} for c in self._data]
        return IntMatrix._trusted(len(idx), self.cols, data)

    def map_entries(self, f) -> "IntMatrix":
        data = []
        for c in self._data:
            nc = {}
            for i, v in c.items():
                w = f(v)
                if w:
                    nc[i] = w
            data.append(nc)
        return IntMatrix._trusted(self.rows, self.cols, data)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self._data)))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()})"
        return f"IntMatrix<{self.rows}x{self.cols}, nnz={self.nnz()}>"


def tensor_index(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """All index tuples of a tensor word, in row-major (last index fastest) order."""
    return list(product(*(range(s) for s in sizes)))


def flat_index(tup: Sequence[int], sizes: Sequence[int]) -> int:
    k = 0
    for t, s in zip(tup, sizes):
        k = k * s + t
    return k


def add_into(target: dict, vec: Mapping[int, int], k: int = 1) -> None:
    """In-place ``target += k * vec`` for sparse dict vectors."""
    if not k:
        return
    for i, v in vec.items():
        s = target.get(i, 0) + k * v
        if s:
            target[i] = s
        else:
            target.pop(i, None)
