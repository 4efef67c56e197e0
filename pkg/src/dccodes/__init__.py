"""Doubly-cyclic convolutional codes over finite fields.

Finite-field and cyclic-algebra arithmetic, the skew polynomial ring
``A[z; sigma]``, construction of doubly-cyclic codes (including the
Reed-Solomon and BCH families) and their distance analysis.
"""

from .algebra import AlgebraContext, Automorphism, build_context, cycles, idempotent_permutation
from .analysis import (
    CodeReport,
    StateGraph,
    analyze,
    bch_D_bounds,
    block_distance_exhaustive,
    bounds,
    extended_row_distances,
    free_distance,
    is_right_invertible,
    minimality,
    rs_distance_formula,
    weight_enumerator_atomic,
)
from .construct import CodeSpec, bch_zero_set, build_code, build_ghat, coeff_code, make_spec, rs_config
from .galois import Field, Poly
from .polymatrix import GeneratorMatrix

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "Automorphism",
    "CodeReport",
    "CodeSpec",
    "Field",
    "GeneratorMatrix",
    "Poly",
    "StateGraph",
    "analyze",
    "bch_D_bounds",
    "bch_zero_set",
    "block_distance_exhaustive",
    "bounds",
    "build_code",
    "build_context",
    "build_ghat",
    "coeff_code",
    "cycles",
    "extended_row_distances",
    "free_distance",
    "idempotent_permutation",
    "is_right_invertible",
    "make_spec",
    "minimality",
    "rs_config",
    "rs_distance_formula",
    "weight_enumerator_atomic",
]
