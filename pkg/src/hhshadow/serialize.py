"""JSON reading and writing for every object the command line accepts.

Wherever an object is expected, a string names a fixture, a dict with a
``"kind"`` key is a constructive description, and any other dict is the
full table form (group presentations, multiplication tables, matrices as
lists of rows, elements as coordinate vectors).
"""

from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .exact import AbHom, FGAbGroup, IntMatrix
from .lincat import CatBimodule, LinearCategory, _vec_json, canonical_bimodule, free_category
from .ringbimod import (
    Algebra,
    Bimodule,
    BimoduleHom,
    DualPairData,
    automorphism,
    dense,
    matrix_morita_pair,
    tensor_over,
    unit_bimodule,
)


class InputError(ValueError):
    """Malformed or invalid input; carries the location when known."""


def load_json(path):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dumps(obj) -> str:
    """Stable rendering: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)


def _ref(obj, base: Path | None):
    """Resolve ``{"file": path}`` references relative to the including file."""
    if isinstance(obj, dict) and set(obj) == {"file"}:
        p = Path(obj["file"])
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p), p.parent
    return obj, base


# -- groups, algebras, bimodules ---------------------------------------------------

def group_from_json(obj) -> FGAbGroup:
    return FGAbGroup.from_json(obj)


def algebra_to_json(A: Algebra) -> dict:
    return A.to_json()


def algebra_from_json(obj, base: Path | None = None) -> Algebra:
    obj, base = _ref(obj, base)
    if isinstance(obj, str):
        return fixtures.algebra(obj)
    if not isinstance(obj, dict):
        raise InputError("an algebra is a fixture name or an object")
    if "fixture" in obj:
        return fixtures.algebra(obj["fixture"])
    return Algebra.from_json(obj)


def bimodule_to_json(M: Bimodule) -> dict:
    out = M.to_json()
    out["left"] = algebra_to_json(M.left_algebra)
    out["right"] = algebra_to_json(M.right_algebra)
    return out


def bimodule_from_json(obj, default: Algebra | None = None, base: Path | None = None) -> Bimodule:
    obj, base = _ref(obj, base)
    if isinstance(obj, str) or (isinstance(obj, dict) and ("fixture" in obj or "mult" in obj)):
        return unit_bimodule(algebra_from_json(obj, base))
    left = algebra_from_json(obj["left"], base) if "left" in obj else default
    right = algebra_from_json(obj["right"], base) if "right" in obj else left
    if left is None:
        raise InputError("bimodule needs its left algebra")
    return Bimodule(left, right, group_from_json(obj["group"]), obj["left_action"], obj["right_action"], name=obj.get("name", ""))


def matrix_rows(obj) -> list:
    if isinstance(obj, dict):
        obj = obj["matrix"]
    return obj


def automorphism_from_json(obj, A: Algebra | None = None, base: Path | None = None):
    """Returns (algebra, automorphism); a fixture name supplies both."""
    obj, base = _ref(obj, base)
    if isinstance(obj, str):
        return fixtures.algebra_automorphism(obj)
    if isinstance(obj, dict) and "algebra" in obj and A is None:
        A = algebra_from_json(obj["algebra"], base)
    if A is None:
        raise InputError("automorphism needs its algebra")
    return A, automorphism(A, matrix_rows(obj))


def element_from_json(obj) -> dict:
    return _vec_json(obj)


# -- dual pairs --------------------------------------------------------------------

def pair_from_json(obj, base: Path | None = None) -> DualPairData:
    obj, base = _ref(obj, base)
    if isinstance(obj, str):
        return fixtures.morita_pair(obj)
    if obj.get("kind") == "matrix":
        return matrix_morita_pair(algebra_from_json(obj["algebra"], base), int(obj.get("r", 2)))
    A = algebra_from_json(obj["A"], base)
    B = algebra_from_json(obj["B"], base)
    M = bimodule_from_json({**obj["M"], "left": obj["M"].get("left", obj["A"]), "right": obj["M"].get("right", obj["B"])}, base=base)
    N = bimodule_from_json({**obj["N"], "left": obj["N"].get("left", obj["B"]), "right": obj["N"].get("right", obj["A"])}, base=base)
    M = Bimodule(A, B, M.group, M.left, M.right, name=M.name)
    N = Bimodule(B, A, N.group, N.left, N.right, name=N.name)
    NM, MN = tensor_over(N, M), tensor_over(M, N)
    ev = BimoduleHom(NM, unit_bimodule(B), IntMatrix.from_rows(matrix_rows(obj["eval"]), ncols=NM.n))
    co = BimoduleHom(unit_bimodule(A), MN, IntMatrix.from_rows(matrix_rows(obj["coeval"]), ncols=A.n))
    return DualPairData(M, N, ev, co)


# -- linear categories -------------------------------------------------------------

def category_from_json(obj, base: Path | None = None) -> LinearCategory:
    obj, base = _ref(obj, base)
    if isinstance(obj, dict) and obj.get("kind") == "free":
        return free_category(algebra_from_json(obj["algebra"], base), int(obj.get("r", 2)))
    if isinstance(obj, dict) and obj.get("kind") == "one_object":
        from .lincat import one_object
        return one_object(algebra_from_json(obj["algebra"], base))
    return LinearCategory.from_json(obj)


def cat_bimodule_from_json(obj, C: LinearCategory, base: Path | None = None) -> CatBimodule:
    """``{"groups": [{"source", "target", "group"}], "left": [{"objects": [a2, a, b], "table"}],
    "right": [{"objects": [a, b, b2], "table"}]}``, or ``{"kind": "canonical"}``."""
    obj, base = _ref(obj, base)
    if obj.get("kind") == "canonical":
        return canonical_bimodule(C)
    groups = {(g["source"], g["target"]): group_from_json(g["group"]) for g in obj["groups"]}
    left = {tuple(e["objects"]): [[_vec_json(v) for v in row] for row in e["table"]] for e in obj["left"]}
    right = {tuple(e["objects"]): [[_vec_json(v) for v in row] for row in e["table"]] for e in obj["right"]}
    return CatBimodule(C, C, groups, left, right, name=obj.get("name", ""))


# -- Mackey and Green functors ------------------------------------------------------

def green_from_json(obj, base: Path | None = None):
    from .mackey import burnside, fixed_point_green
    from .mackey.functor import GreenFunctor, MackeyFunctor

    obj, base = _ref(obj, base)
    if isinstance(obj, str):
        if obj not in fixtures.GREEN:
            raise InputError(f"unknown Green functor fixture {obj!r}")
        obj = fixtures.GREEN[obj]
    kind = obj.get("kind")
    if kind == "burnside":
        return burnside(int(obj["m"]))
    if kind == "fixed_point":
        A = algebra_from_json(obj["algebra"], base)
        g = None
        if "action" in obj:
            g = automorphism_from_json(obj["action"], None if isinstance(obj["action"], str) else A, base)[1]
            if isinstance(obj["action"], str):
                A = g.source
        return fixed_point_green(int(obj["m"]), A, g, name=obj.get("name", ""))
    if "algebras" in obj:
        M = MackeyFunctor.from_json(obj["mackey"])
        algs = {d: Algebra(M.level(d), a["mult"], a["unit"], name=a.get("name", "")) for d, a in ((int(k), v) for k, v in obj["algebras"].items())}
        return GreenFunctor(M, algs)
    raise InputError("not a Green functor description")


def green_to_json(R) -> dict:
    return {
        "mackey": R.mackey.to_json(),
        "algebras": {str(d): {"mult": [[dense(R.algebra(d).mult[i][j], R.algebra(d).n) for j in range(R.algebra(d).n)] for i in range(R.algebra(d).n)], "unit": dense(R.algebra(d).unit, R.algebra(d).n)} for d in R.divisors},
    }


def mackey_from_json(obj, base: Path | None = None):
    from .mackey import fixed_point_mackey
    from .mackey.functor import MackeyFunctor

    obj, base = _ref(obj, base)
    if isinstance(obj, dict) and "levels" in obj:
        return MackeyFunctor.from_json(obj)
    if isinstance(obj, dict) and obj.get("kind") == "fixed_point_group":
        V = group_from_json(obj["group"])
        g = AbHom(V, V, matrix_rows(obj["action"])) if "action" in obj else None
        return fixed_point_mackey(int(obj["m"]), V, g, name=obj.get("name", ""))
    return green_from_json(obj, base).mackey


def green_bimodule_from_json(obj, R, S, base: Path | None = None):
    from .mackey.functor import GreenBimodule, MackeyFunctor, unit_green_bimodule

    obj, base = _ref(obj, base)
    if obj == "unit" or (isinstance(obj, dict) and obj.get("kind") == "unit"):
        return unit_green_bimodule(R)
    M = MackeyFunctor.from_json(obj["mackey"])
    left = {int(d): t for d, t in obj["left"].items()}
    right = {int(d): t for d, t in obj["right"].items()}
    return GreenBimodule(R, S, M, left, right, name=obj.get("name", ""))


def green_pair_from_json(obj, base: Path | None = None):
    """(R, S, M, N) for the Green shadow check."""
    from .mackey.shadow import matrix_green

    obj, base = _ref(obj, base)
    if obj.get("kind") == "matrix":
        R = green_from_json(obj["base"], base)
        S, M, N = matrix_green(R, int(obj.get("r", 2)))
        return R, S, M, N
    R = green_from_json(obj["R"], base)
    S = green_from_json(obj["S"], base) if "S" in obj else R
    M = green_bimodule_from_json(obj.get("M", "unit"), R, S, base)
    N = green_bimodule_from_json(obj.get("N", "unit"), S, R, base)
    return R, S, M, N


def tower_from_json(obj, base: Path | None = None):
    from .mackey.tower import CyclotomicTower, constant_tower

    obj, base = _ref(obj, base)
    if isinstance(obj, str):
        if obj not in fixtures.TOWERS:
            raise InputError(f"unknown tower fixture {obj!r}")
        obj = fixtures.TOWERS[obj]
    if obj.get("kind") == "constant":
        return constant_tower(int(obj["p"]), algebra_from_json(obj["algebra"], base), int(obj.get("stages", 3)))
    p = int(obj["p"])
    rings = [green_from_json(s, base) for s in obj["stages"]]
    isos = [{int(d): IntMatrix.from_rows(rows, ncols=rings[n + 1].level(p * int(d)).n_gens) for d, rows in f.items()} for n, f in enumerate(obj["isos"])]
    return CyclotomicTower(p, rings, isos)
