"""Named standard objects.

Every entry can be rebuilt from its name; ``write_corpus`` dumps them as JSON
so that tests and the command line can run from files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .ringbimod import (
    Algebra,
    automorphism,
    cyclic_ring,
    dual_numbers,
    group_ring,
    integers,
    matrix_algebra,
    matrix_morita_pair,
    product_algebra,
)


def _f3xf3() -> Algebra:
    return product_algebra(cyclic_ring(3), cyclic_ring(3))


ALGEBRAS = {
    "z": integers,
    "z2": lambda: cyclic_ring(2),
    "z3": lambda: cyclic_ring(3),
    "z4": lambda: cyclic_ring(4),
    "dual_numbers": dual_numbers,
    "zc2": lambda: group_ring(2),
    "zc3": lambda: group_ring(3),
    "m2z": lambda: matrix_algebra(integers(), 2),
    "m2z2": lambda: matrix_algebra(cyclic_ring(2), 2),
    "f3xf3": _f3xf3,
}

# algebra name, matrix (rows) of the automorphism on generators
AUTOMORPHISMS = {
    "sign": ("zc2", [[1, 0], [0, -1]]),
    "swap": ("f3xf3", [[0, 1], [1, 0]]),
}

PAIRS = {
    "z_vs_m2z": ("z", 2),
    "z2_vs_m2z2": ("z2", 2),
    "z4_vs_m2z4": ("z4", 2),
    "zc2_vs_m2zc2": ("zc2", 2),
}

# Mackey and Green functors: (kind, parameters)
GREEN = {
    "burnside2": {"kind": "burnside", "m": 2},
    "burnside3": {"kind": "burnside", "m": 3},
    "burnside4": {"kind": "burnside", "m": 4},
    "fixed_z_c2": {"kind": "fixed_point", "m": 2, "algebra": "z"},
    "fixed_f2_c2": {"kind": "fixed_point", "m": 2, "algebra": "z2"},
    "fixed_f3_c3": {"kind": "fixed_point", "m": 3, "algebra": "z3"},
    "fixed_zc2_sign": {"kind": "fixed_point", "m": 2, "algebra": "zc2", "action": "sign"},
}

TOWERS = {
    "constant_f2": {"kind": "constant", "p": 2, "algebra": "z2", "stages": 3},
    "constant_f3": {"kind": "constant", "p": 3, "algebra": "z3", "stages": 3},
}


def algebra(name: str) -> Algebra:
    try:
        A = ALGEBRAS[name]()
    except KeyError:
        raise KeyError(f"unknown algebra fixture {name!r}") from None
    A.name = A.name or name
    return A


def algebra_automorphism(name: str):
    alg, rows = AUTOMORPHISMS[name]
    A = algebra(alg)
    return A, automorphism(A, rows)


def morita_pair(name: str):
    alg, r = PAIRS[name]
    return matrix_morita_pair(algebra(alg), r)


def corpus() -> dict:
    """Every fixture as a JSON-ready object, keyed by file name."""
    from .serialize import algebra_to_json, bimodule_to_json

    out = {}
    for name in ALGEBRAS:
        out[f"{name}.json"] = algebra_to_json(algebra(name))
    for name, (alg, rows) in AUTOMORPHISMS.items():
        out[f"phi_{name}.json"] = {"algebra": alg, "matrix": rows}
    for name, (alg, r) in PAIRS.items():
        out[f"{name}.json"] = {"kind": "matrix", "algebra": alg, "r": r}
        d = morita_pair(name)
        out[f"{name}_explicit.json"] = {
            "A": algebra_to_json(d.M.left_algebra),
            "B": algebra_to_json(d.M.right_algebra),
            "M": bimodule_to_json(d.M),
            "N": bimodule_to_json(d.N),
            "eval": {"matrix": d.eval.hom.matrix.to_rows()},
            "coeval": {"matrix": d.coeval.hom.matrix.to_rows()},
        }
    for name, desc in GREEN.items():
        out[f"green_{name}.json"] = desc
    for name, desc in TOWERS.items():
        out[f"tower_{name}.json"] = desc
    out["category_free2_z.json"] = {"kind": "free", "algebra": "z", "r": 2}
    out["green_pair_matrix_f2.json"] = {"kind": "matrix", "base": "fixed_f2_c2", "r": 2}
    out["green_pair_matrix_zc2_sign.json"] = {"kind": "matrix", "base": "fixed_zc2_sign", "r": 2}
    out["idem_identity2.json"] = [[[1], [0]], [[0], [1]]]
    out["map_identity2.json"] = [[[1], [0]], [[0], [1]]]
    out["idem_identity1.json"] = [[[1, 0]]]
    out["map_t.json"] = [[[0, 1]]]
    from .generate import generate
    out["generated_algebra_seed0.json"] = generate("algebra", 0, 2)
    out["generated_mackey_seed0_m2.json"] = generate("mackey", 0, 2, 2)
    return out


def write_corpus(directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, obj in sorted(corpus().items()):
        p = d / fname
        p.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
        paths.append(p)
    return paths
