"""Exact GF(2) verification of the homotopy G-algebra structure on the cobar
construction of a DG-bialgebra, and of the bialgebra structure it induces on
the bar construction of that cobar construction."""

__version__ = "0.1.0"

from .barcobar import BarCoalgebra, CobarAlgebra, TruncationBounds
from .dg import DgBialgebra, validate
from .gf2 import Gf2Vector
from .hga import HgaContext
from .barbialg import BarOfCobar

__all__ = [
    "BarCoalgebra",
    "BarOfCobar",
    "CobarAlgebra",
    "DgBialgebra",
    "Gf2Vector",
    "HgaContext",
    "TruncationBounds",
    "validate",
    "__version__",
]
