"""Exact verification of quasi-heredity for twisted category algebras of
finite split categories, with their standard modules."""

from .algebra import CategoryAlgebra
from .category import FiniteCategory, Morphism, is_split, validate
from .cocycle import Cocycle, trivial_cocycle, validate_cocycle
from .generators import BUNDLED, builtin, load, resolve, save
from .green import j_decompose, local_data
from .heredity import build_chain, certify
from .modrep import projective_cover, standard_modules, verify_standard_axioms

__all__ = [
    "BUNDLED", "CategoryAlgebra", "Cocycle", "FiniteCategory", "Morphism", "build_chain", "builtin",
    "certify", "is_split", "j_decompose", "load", "local_data", "projective_cover", "resolve", "save",
    "standard_modules", "trivial_cocycle", "validate", "validate_cocycle", "verify_standard_axioms",
]

__version__ = "0.1.0"
