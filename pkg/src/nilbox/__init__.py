"""nilbox: covariants and equivariants of nilpotent Weitzenböck derivations.

Decompositions are written as disjoint unions of box blocks over a
finite set of prime covariants; see the README for a walkthrough.
"""

__version__ = "0.1.0"

from .ratpoly import LinearDerivation, Polynomial, kernel_dimension, poly_parse
from .sl2core import build_triad
from .seeds import seed_decomposition
from .factorpipe import box_product
from .booster import boost, lettered, verify_identity
from .oracle import check_standard, compare_dims, hilbert_count
from .decomposition import dumps, loads

__all__ = ["Polynomial", "LinearDerivation", "poly_parse", "kernel_dimension",
           "build_triad", "seed_decomposition", "box_product", "boost", "lettered",
           "verify_identity", "check_standard", "compare_dims", "hilbert_count",
           "dumps", "loads", "__version__"]
