"""Exact classification of IE-closed subcategories of Dynkin path algebras via twin rigid modules."""

from .catalog import Catalog, build_catalog
from .errors import InstanceTooLargeError, TwinRigidError, UnsupportedAlgebraError, UsageError, VerificationError
from .linalg import F2, QQ, Field, Matrix
from .quiver import Quiver, linear_quiver, load_quiver, parse_quiver
from .representation import Morphism, Representation
from .subcat import Subcat, classify_ie
from .twin_rigid import TwinRigidPair, mutate, mutation_quiver

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "F2",
    "Field",
    "InstanceTooLargeError",
    "Matrix",
    "Morphism",
    "QQ",
    "Quiver",
    "Representation",
    "Subcat",
    "TwinRigidError",
    "TwinRigidPair",
    "UnsupportedAlgebraError",
    "UsageError",
    "VerificationError",
    "build_catalog",
    "classify_ie",
    "linear_quiver",
    "load_quiver",
    "mutate",
    "mutation_quiver",
    "parse_quiver",
]
