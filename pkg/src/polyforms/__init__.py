"""Popov and Hermite normal forms of polynomial matrices over prime fields."""

from .gfp import PrimeField, is_prime
from .upoly import NEG_INF, Poly
from .polymat import (
    PivotProfile,
    PolyMatrix,
    amplitude,
    cdeg_shifted,
    is_hermite,
    is_ordered_weak_popov,
    is_popov,
    is_reduced,
    is_weak_popov,
    leading_matrix,
    leading_matrix_shifted,
    mat_mul,
    mat_mul_trunc,
    pivot_index,
    pivot_profile,
    rdeg_shifted,
    truncated_inverse,
    unimodular_inverse,
)
from .bases import (
    SingularMatrixError,
    VerificationError,
    approximant_basis_owp,
    column_rank_profile,
    mat_quotient_left,
    minimal_kernel_basis,
    nonsingular_popov,
    popov_normalize,
    row_basis,
    weak_popov_reduce,
)
from .normalforms import (
    CompletionFailure,
    PivotSupportError,
    PopovResult,
    hermite_form,
    known_support_popov,
    pivot_support_via_factor,
    popov_form,
    random_completion_popov,
    wide_matrix_pivot_support,
)

__version__ = "0.1.0"
