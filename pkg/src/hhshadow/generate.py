"""Seeded random algebras, bimodules and Mackey functors of small rank.

Candidates are drawn from parametrised families and kept only if they pass
the construction-time axiom checks, so every output is valid.  Bimodules are
pulled back from a common target ring along ring maps, which is what makes
random well-typed pairs and triples cheap to produce.
"""

from __future__ import annotations

import random

from .exact import AbHom, FGAbGroup, IntMatrix
from .ringbimod import (
    Algebra,
    AlgebraHom,
    AxiomError,
    Bimodule,
    automorphism,
    cyclic_ring,
    integers,
    product_algebra,
    restrict_bimodule,
    unit_bimodule,
)


def zero_algebra() -> Algebra:
    return Algebra(FGAbGroup.trivial(), [], {}, name="0")


def quadratic(a: int, b: int, n: int = 0) -> Algebra:
    """Z[x]/(x² - a x - b), reduced mod n when n > 0; basis 1, x."""
    g = FGAbGroup.free(2) if n == 0 else FGAbGroup.from_orders([n, n])
    mult = [[{0: 1}, {1: 1}], [{1: 1}, {0: b, 1: a}]]
    poly = "x^2" + "".join(f" {'-' if c > 0 else '+'} {abs(c)}{t}" for c, t in ((a, "x"), (b, "")) if c).replace(" 1x", " x")
    name = f"Z[x]/({poly})" + (f" mod {n}" if n else "")
    return Algebra(g, mult, {0: 1}, name=name)


def reduce_mod(A: Algebra, n: int) -> tuple[Algebra, AlgebraHom]:
    """A/nA with the quotient map."""
    rel = A.group.relations.hstack(IntMatrix.scalar(A.n, n))
    Q = Algebra(FGAbGroup(A.n, rel), A.mult, A.unit, name=f"{A.name}/{n}")
    return Q, AlgebraHom(A, Q, IntMatrix.identity(A.n))


def unit_map(A: Algebra) -> AlgebraHom:
    Z = integers()
    return AlgebraHom(Z, A, IntMatrix._trusted(A.n, 1, [dict(A.unit)]))


def random_algebra(rng: random.Random, max_rank: int = 2) -> Algebra:
    if max_rank <= 0:
        return zero_algebra()
    while True:
        r = rng.randint(1, max_rank)
        try:
            if r == 1:
                n = rng.choice([0, 2, 3, 4, 5, 6])
                return integers() if n == 0 else cyclic_ring(n)
            kind = rng.choice(["quadratic", "quadratic", "product"])
            if kind == "quadratic":
                return quadratic(rng.randint(-2, 2), rng.randint(-2, 2), rng.choice([0, 0, 2, 3, 4]))
            f = [rng.choice([0, 2, 3]) for _ in range(2)]
            return product_algebra(*(integers() if k == 0 else cyclic_ring(k) for k in f))
        except (AxiomError, ValueError):
            continue


def random_automorphism(rng: random.Random, A: Algebra, tries: int = 40) -> AlgebraHom:
    """Rejection sampling over small integer matrices; identity as fallback."""
    n = A.n
    for _ in range(tries):
        rows = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)]
        try:
            return automorphism(A, rows)
        except (AxiomError, ValueError):
            continue
    return AlgebraHom.identity(A)


def _pullback(T: Algebra, f: AlgebraHom, g: AlgebraHom) -> Bimodule:
    """T as an (X, Y)-bimodule through f : X -> T and g : Y -> T."""
    return restrict_bimodule(unit_bimodule(T), left=f, right=g)


def _maps_into(rng: random.Random, A: Algebra):
    """A target ring T and a pool of (algebra, ring map into T)."""
    T = None
    if A.n and rng.random() < 0.4:
        T, q = reduce_mod(A, rng.choice([2, 3]))
    if T is not None and not T.group.is_trivial():
        pool = [(integers(), unit_map(T)), (A, q), (T, AlgebraHom.identity(T))]
    else:
        T = A
        pool = [(integers(), unit_map(T)), (A, AlgebraHom.identity(T))]
    return T, pool


def random_pair(rng: random.Random, max_rank: int = 2):
    """(A, B, M, N) with M an (A, B)- and N a (B, A)-bimodule."""
    A = random_algebra(rng, max_rank)
    T, pool = _maps_into(rng, A)
    (X, f), (Y, g) = rng.choice(pool), rng.choice(pool)
    tw1, tw2 = random_automorphism(rng, T), random_automorphism(rng, T)
    M = _pullback(T, tw1 @ f, g)
    N = _pullback(T, g, tw2 @ f)
    return X, Y, M, N


def random_triple(rng: random.Random, max_rank: int = 2):
    """(M, N, P): an (X, Y)-, a (Y, W)- and a (W, X)-bimodule."""
    A = random_algebra(rng, max_rank)
    T, pool = _maps_into(rng, A)
    (X, f), (Y, g), (W, h) = (rng.choice(pool) for _ in range(3))
    tw = random_automorphism(rng, T)
    return _pullback(T, tw @ f, g), _pullback(T, g, h), _pullback(T, h, f)


def _random_group(rng: random.Random, max_rank: int) -> FGAbGroup:
    if max_rank <= 0:
        return FGAbGroup.trivial()
    r = rng.randint(1, max_rank)
    return FGAbGroup.from_orders([rng.choice([0, 0, 2, 3, 4]) for _ in range(r)])


def random_group_action(rng: random.Random, V: FGAbGroup, m: int, tries: int = 40) -> AbHom:
    from .exact import is_isomorphism
    from .mackey.functor import _diff, power

    n = V.n_gens
    for _ in range(tries):
        try:
            g = AbHom(V, V, [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)])
        except ValueError:
            continue
        if is_isomorphism(g) and _diff(power(g, m), AbHom.identity(V)) is None:
            return g
    return AbHom.identity(V)


def random_mackey(rng: random.Random, m: int = 2, max_rank: int = 2):
    from .mackey import box, burnside, fixed_point_mackey

    if max_rank <= 0:
        return fixed_point_mackey(m, FGAbGroup.trivial(), name="0")
    kind = rng.choice(["fixed", "fixed", "fixed", "burnside", "box"])
    if kind == "burnside":
        return burnside(m).mackey
    if kind == "box":
        F = [fixed_point_mackey(m, V, random_group_action(rng, V, m)) for V in (_random_group(rng, 1), _random_group(rng, 1))]
        return box(*F)
    V = _random_group(rng, max_rank)
    return fixed_point_mackey(m, V, random_group_action(rng, V, m), name="fixed")


def generate(kind: str, seed: int = 0, max_rank: int = 2, m: int = 2) -> dict:
    from .serialize import algebra_to_json, bimodule_to_json

    rng = random.Random(seed)
    if kind == "algebra":
        return algebra_to_json(random_algebra(rng, max_rank))
    if kind in ("bimodule", "pair"):
        if max_rank <= 0:
            A = zero_algebra()
            return {"A": algebra_to_json(A), "B": algebra_to_json(A), "M": bimodule_to_json(unit_bimodule(A)), "N": bimodule_to_json(unit_bimodule(A))}
        A, B, M, N = random_pair(rng, max_rank)
        return {"A": algebra_to_json(A), "B": algebra_to_json(B), "M": bimodule_to_json(M), "N": bimodule_to_json(N)}
    if kind == "triple":
        M, N, P = random_triple(rng, max(max_rank, 1))
        return {"M": bimodule_to_json(M), "N": bimodule_to_json(N), "P": bimodule_to_json(P)}
    if kind == "mackey":
        return random_mackey(rng, m, max_rank).to_json()
    raise ValueError(f"unknown kind {kind!r}")
