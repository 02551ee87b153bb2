from .matrix import IntMatrix, add_into, flat_index, tensor_index
from .smith import SmithDecomposition, egcd, elementary_diagonal, invariant_factors, rank, smith_decompose, smith_normal_form
from .abelian import (
    AbHom,
    Element,
    FGAbGroup,
    WellDefinednessError,
    check_composable,
    cokernel,
    direct_sum,
    format_canonical,
    hom_direct_sum,
    homology_at,
    homology_with_inclusion,
    image,
    inverse,
    is_injective,
    is_isomorphism,
    is_surjective,
    kernel,
    lattice_kernel,
    preimage_lattice,
    solve_in_lattice,
    tensor,
    tensor_hom,
    tensor_many,
)

__all__ = [
    "AbHom",
    "Element",
    "FGAbGroup",
    "IntMatrix",
    "SmithDecomposition",
    "WellDefinednessError",
    "add_into",
    "check_composable",
    "cokernel",
    "direct_sum",
    "egcd",
    "elementary_diagonal",
    "flat_index",
    "format_canonical",
    "hom_direct_sum",
    "homology_at",
    "homology_with_inclusion",
    "image",
    "invariant_factors",
    "inverse",
    "is_injective",
    "is_isomorphism",
    "is_surjective",
    "kernel",
    "lattice_kernel",
    "preimage_lattice",
    "rank",
    "smith_decompose",
    "smith_normal_form",
    "solve_in_lattice",
    "tensor",
    "tensor_hom",
    "tensor_index",
    "tensor_many",
]
