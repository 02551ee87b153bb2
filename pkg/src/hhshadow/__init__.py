"""Exact Hochschild homology over Z with structural checks.

Submodules: ``exact`` (integer matrices, Smith form, abelian groups),
``ringbimod`` (algebras, bimodules, dual pairs), ``hochschild``,
``twisted``, ``lincat`` and ``mackey``.
"""

from .exact import AbHom, FGAbGroup, IntMatrix, format_canonical
from .hochschild import ResourceLimitError, hh, morita_hh_check
from .report import CheckReport
from .ringbimod import Algebra, AlgebraHom, AxiomError, Bimodule, DualPairData

__version__ = "0.1.0"

__all__ = [
    "AbHom",
    "Algebra",
    "AlgebraHom",
    "AxiomError",
    "Bimodule",
    "CheckReport",
    "DualPairData",
    "FGAbGroup",
    "IntMatrix",
    "ResourceLimitError",
    "format_canonical",
    "hh",
    "morita_hh_check",
]
