"""Workbench for right-triangulated quotients of stable module categories.

Layers, bottom up: exact linear algebra (``exactalg``), quiver
representations of monomial algebras (``algrep``), the stable module
category of a self-injective algebra with its triangles (``stabcat``),
quotients by an additive subcategory with the one-sided triangulated
structure (``subfactor``), exhaustive axiom/theorem verification
(``verify``), and a batch CLI (``cli``).
"""

from .exactalg import FieldSpec, Mat
from .algrep import MonomialAlgebra, Quiver, Rep, RepMap, serial_algebra

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "Mat",
    "MonomialAlgebra",
    "Quiver",
    "Rep",
    "RepMap",
    "serial_algebra",
    "__version__",
]
