"""Mackey and Green functors for cyclic groups."""

from .functor import (
    GreenBimodule,
    GreenFunctor,
    MackeyFunctor,
    MackeyHom,
    burnside,
    burnside_action,
    covering_pairs,
    divisors,
    fixed_point_green,
    fixed_point_mackey,
    unit_green_bimodule,
)
from .box import BoxProduct, RelativeBox, box, box_flatten_left, box_flatten_right, box_symmetry, box_unit_iso, relative_box
from .nerve import TwistedNerve, g_twist, hh0_closed_form, mackey_hh
from .geometric import ef_sub, etilde, etilde_burnside, geometric_fixed_points, geometric_fixed_points_green, phi_monoidal_compare, phi_monoidal_map, phi_vs_etilde
from .tower import CyclotomicTower, TowerError, TrReport, constant_tower, restriction_chain_map, tr_tower
from .shadow import green_bicyclic, green_rotation, green_shadow_check, matrix_green

__all__ = [
    "BoxProduct",
    "CyclotomicTower",
    "GreenBimodule",
    "GreenFunctor",
    "MackeyFunctor",
    "MackeyHom",
    "RelativeBox",
    "TowerError",
    "TrReport",
    "TwistedNerve",
    "box",
    "box_flatten_left",
    "box_flatten_right",
    "box_symmetry",
    "box_unit_iso",
    "burnside",
    "burnside_action",
    "constant_tower",
    "covering_pairs",
    "divisors",
    "ef_sub",
    "etilde",
    "etilde_burnside",
    "fixed_point_green",
    "fixed_point_mackey",
    "g_twist",
    "geometric_fixed_points",
    "geometric_fixed_points_green",
    "green_bicyclic",
    "green_rotation",
    "green_shadow_check",
    "hh0_closed_form",
    "mackey_hh",
    "matrix_green",
    "phi_monoidal_compare",
    "phi_monoidal_map",
    "phi_vs_etilde",
    "relative_box",
    "restriction_chain_map",
    "tr_tower",
    "unit_green_bimodule",
]
