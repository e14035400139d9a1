"""Exact computations with 0-Hecke algebra modules built on tableaux.

The package builds the ribbon, immaculate, extended and (Young) permuted
composition tableau modules, the maps between them and the projective
covers of the permuted composition modules, and checks each claim by
exhaustive computation with rational arithmetic.
"""

from .comb_core import DomainError
from .exact_linalg import RatMatrix, Subspace
from .hecke_modules import ModuleRep, build_module
from .qsym import QSymElt, ch_of_module
from .tableaux import Tableau, enumerate_family

__all__ = [
    "DomainError",
    "ModuleRep",
    "QSymElt",
    "RatMatrix",
    "Subspace",
    "Tableau",
    "build_module",
    "ch_of_module",
    "enumerate_family",
]
__version__ = "0.1.0"
