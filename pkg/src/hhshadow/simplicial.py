"""Truncated simplicial and bisimplicial abelian groups.

Face and degeneracy maps are ``AbHom`` tables; every identity is checked on
generators (modulo relations) up to the truncation level.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .chain import ChainComplex
from .exact import AbHom, FGAbGroup, IntMatrix


class SimplicialIdentityError(ValueError):
    pass


def _differs(f: AbHom, g: AbHom) -> int | None:
    return (f - g).first_nonzero_generator()


class SimplicialAb:
    """Levels ``X_0 .. X_T``; ``faces[q][i] : X_q -> X_{q-1}`` and
    ``degens[q][j] : X_q -> X_{q+1}`` for ``q < T``."""

    def __init__(self, levels, faces, degens, verify: bool = True, label: str = ""):
        self.levels = list(levels)
        self.T = len(self.levels) - 1
        self.faces = faces
        self.degens = degens
        self.label = label
        if verify:
            self.verify()

    def identity_failures(self, upto: int | None = None, first_only: bool = False) -> list[str]:
        T = self.T if upto is None else min(upto, self.T)
        d, s = self.faces, self.degens
        bad = []

        def report(msg):
            bad.append(msg)
            return first_only

        for q in range(2, T + 1):
            for j in range(1, q + 1):
                for i in range(j):
                    g = _differs(d[q - 1][i] @ d[q][j], d[q - 1][j - 1] @ d[q][i])
                    if g is not None and report(f"d_{i} d_{j} = d_{j - 1} d_{i} fails at level {q}, generator {g}"):
                        return bad
        for q in range(0, T):
            for j in range(q + 1):
                for i in range(q + 2):
                    lhs = d[q + 1][i] @ s[q][j]
                    if i < j:
                        rhs = s[q - 1][j - 1] @ d[q][i]
                        name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                    elif i in (j, j + 1):
                        rhs = AbHom.identity(self.levels[q])
                        name = f"d_{i} s_{j} = id"
                    else:
                        rhs = s[q - 1][j] @ d[q][i - 1]
                        name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                    g = _differs(lhs, rhs)
                    if g is not None and report(f"{name} fails at level {q}, generator {g}"):
                        return bad
        for q in range(0, T - 1):
            for j in range(q + 1):
                for i in range(j + 1):
                    g = _differs(s[q + 1][i] @ s[q][j], s[q + 1][j + 1] @ s[q][i])
                    if g is not None and report(f"s_{i} s_{j} = s_{j + 1} s_{i} fails at level {q}, generator {g}"):
                        return bad
        return bad

    def verify(self) -> None:
        bad = self.identity_failures(first_only=True)
        if bad:
            raise SimplicialIdentityError(f"{self.label + ': ' if self.label else ''}{bad[0]}")

    def moore_differential(self, q: int) -> IntMatrix:
        m = self.faces[q][0].matrix
        for i in range(1, q + 1):
            f = self.faces[q][i].matrix
            m = m - f if i % 2 else m + f
        return m

    def degenerate_images(self, q: int) -> list[dict]:
        if q == 0:
            return []
        cols = []
        for s in self.degens[q - 1]:
            cols.extend(c for c in s.matrix.columns() if c)
        return cols

    def moore_complex(self, normalized: bool = False, check: bool = True) -> ChainComplex:
        if normalized:
            groups = []
            for q, g in enumerate(self.levels):
                extra = self.degenerate_images(q)
                rel = g.relations.hstack(IntMatrix._trusted(g.n_gens, len(extra), extra)) if extra else g.relations
                groups.append(FGAbGroup(g.n_gens, rel))
        else:
            groups = self.levels
        diffs = [AbHom(groups[q], groups[q - 1], self.moore_differential(q), check=check) for q in range(1, self.T + 1)]
        return ChainComplex(groups, diffs, truncated=True, check=check)


class BisimplicialAb:
    """A bisimplicial abelian group given by callables, truncated at ``T`` in both directions.

    ``group(p, q)``; ``hface(p, q, i) : X_{p,q} -> X_{p-1,q}``;
    ``vface(p, q, i) : X_{p,q} -> X_{p,q-1}``; degeneracies likewise.
    """

    def __init__(self, T: int, group: Callable, hface: Callable, vface: Callable, hdeg: Callable, vdeg: Callable, label: str = ""):
        self.T = T
        self.label = label
        self.group = lru_cache(maxsize=None)(group)
        self.hface = lru_cache(maxsize=None)(hface)
        self.vface = lru_cache(maxsize=None)(vface)
        self.hdeg = lru_cache(maxsize=None)(hdeg)
        self.vdeg = lru_cache(maxsize=None)(vdeg)

    def row(self, q: int, T: int | None = None) -> SimplicialAb:
        """The horizontal simplicial object at vertical level q."""
        T = self.T if T is None else T
        levels = [self.group(p, q) for p in range(T + 1)]
        faces = [None] + [[self.hface(p, q, i) for i in range(p + 1)] for p in range(1, T + 1)]
        degens = [[self.hdeg(p, q, j) for j in range(p + 1)] for p in range(T)]
        return SimplicialAb(levels, faces, degens, verify=False, label=f"{self.label} row {q}")

    def column(self, p: int, T: int | None = None) -> SimplicialAb:
        T = self.T if T is None else T
        levels = [self.group(p, q) for q in range(T + 1)]
        faces = [None] + [[self.vface(p, q, i) for i in range(q + 1)] for q in range(1, T + 1)]
        degens = [[self.vdeg(p, q, j) for j in range(q + 1)] for q in range(T)]
        return SimplicialAb(levels, faces, degens, verify=False, label=f"{self.label} column {p}")

    def identity_failures(self, first_only: bool = False) -> list[str]:
        T = self.T
        bad = []
        for q in range(T + 1):
            bad += [f"horizontal, q={q}: {b}" for b in self.row(q).identity_failures(first_only=first_only)]
            if bad and first_only:
                return bad
        for p in range(T + 1):
            bad += [f"vertical, p={p}: {b}" for b in self.column(p).identity_failures(first_only=first_only)]
            if bad and first_only:
                return bad
        # horizontal and vertical structure maps commute
        for p in range(T + 1):
            for q in range(T + 1):
                checks = []
                if p >= 1 and q >= 1:
                    for i in range(p + 1):
                        for j in range(q + 1):
                            checks.append((f"h{i} v{j}", self.hface(p, q - 1, i) @ self.vface(p, q, j), self.vface(p - 1, q, j) @ self.hface(p, q, i)))
                if p < T and q >= 1:
                    for i in range(p + 1):
                        for j in range(q + 1):
                            checks.append((f"hs{i} v{j}", self.hdeg(p, q - 1, i) @ self.vface(p, q, j), self.vface(p + 1, q, j) @ self.hdeg(p, q, i)))
                if q < T and p >= 1:
                    for i in range(p + 1):
                        for j in range(q + 1):
                            checks.append((f"h{i} vs{j}", self.hface(p, q + 1, i) @ self.vdeg(p, q, j), self.vdeg(p - 1, q, j) @ self.hface(p, q, i)))
                if p < T and q < T:
                    for i in range(p + 1):
                        for j in range(q + 1):
                            checks.append((f"hs{i} vs{j}", self.hdeg(p, q + 1, i) @ self.vdeg(p, q, j), self.vdeg(p + 1, q, j) @ self.hdeg(p, q, i)))
                for name, f, g in checks:
                    k = _differs(f, g)
                    if k is not None:
                        bad.append(f"{name} do not commute at ({p},{q}), generator {k}")
                        if first_only:
                            return bad
        return bad

    def diagonal(self, T: int | None = None, verify: bool = True) -> SimplicialAb:
        T = self.T if T is None else T
        levels = [self.group(q, q) for q in range(T + 1)]
        faces = [None] + [[self.hface(q, q - 1, i) @ self.vface(q, q, i) for i in range(q + 1)] for q in range(1, T + 1)]
        degens = [[self.hdeg(q, q + 1, j) @ self.vdeg(q, q, j) for j in range(q + 1)] for q in range(T)]
        return SimplicialAb(levels, faces, degens, verify=verify, label=f"{self.label} diagonal")


def levelwise_map_failures(X: BisimplicialAb, Y: BisimplicialAb, f: Callable, transpose: bool, T: int) -> list[str]:
    """Check that maps ``f(p, q) : X_{p,q} -> Y_{p,q}`` (or ``Y_{q,p}`` when
    ``transpose``) commute with all faces and degeneracies.

    With ``transpose`` the horizontal structure of X is matched with the
    vertical structure of Y and vice versa.
    """
    bad = []
    for p in range(T + 1):
        for q in range(T + 1):
            fpq = f(p, q)
            if transpose:
                yh_face, yv_face = (lambda a, b, i: Y.vface(b, a, i)), (lambda a, b, i: Y.hface(b, a, i))
                yh_deg, yv_deg = (lambda a, b, i: Y.vdeg(b, a, i)), (lambda a, b, i: Y.hdeg(b, a, i))
            else:
                yh_face, yv_face, yh_deg, yv_deg = Y.hface, Y.vface, Y.hdeg, Y.vdeg
            if p >= 1:
                for i in range(p + 1):
                    k = _differs(f(p - 1, q) @ X.hface(p, q, i), yh_face(p, q, i) @ fpq)
                    if k is not None:
                        bad.append(f"inner face {i} at ({p},{q}), generator {k}")
            if q >= 1:
                for i in range(q + 1):
                    k = _differs(f(p, q - 1) @ X.vface(p, q, i), yv_face(p, q, i) @ fpq)
                    if k is not None:
                        bad.append(f"outer face {i} at ({p},{q}), generator {k}")
            if p < T:
                for i in range(p + 1):
                    k = _differs(f(p + 1, q) @ X.hdeg(p, q, i), yh_deg(p, q, i) @ fpq)
                    if k is not None:
                        bad.append(f"inner degeneracy {i} at ({p},{q}), generator {k}")
            if q < T:
                for i in range(q + 1):
                    k = _differs(f(p, q + 1) @ X.vdeg(p, q, i), yv_deg(p, q, i) @ fpq)
                    if k is not None:
                        bad.append(f"outer degeneracy {i} at ({p},{q}), generator {k}")
    return bad
