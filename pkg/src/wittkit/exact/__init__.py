"""Exact arithmetic kernel: Laurent polynomials over Q, rational functions,
matrices, Smith normal forms, factorization, and certified root data.

Everything here computes with `fractions.Fraction`; no floats enter any
arithmetic path.  Floats appear only in reporting helpers (approximate
angles).
"""

from wittkit.exact.laurent import (
    LaurentPoly,
    is_self_conjugate,
    in_multiplicative_set,
)
from wittkit.exact.ratfunc import RatFunc, series_expand
from wittkit.exact.matrix import Matrix, invert_ratfunc_matrix
from wittkit.exact.snf import SNFResult, smith_normal_form
from wittkit.exact.factor import factor_rational_poly
from wittkit.exact.roots import CertifiedRoot, hermitian_signature_at_root

__all__ = [
    "LaurentPoly",
    "is_self_conjugate",
    "in_multiplicative_set",
    "RatFunc",
    "series_expand",
    "Matrix",
    "invert_ratfunc_matrix",
    "SNFResult",
    "smith_normal_form",
    "factor_rational_poly",
    "CertifiedRoot",
    "hermitian_signature_at_root",
]
