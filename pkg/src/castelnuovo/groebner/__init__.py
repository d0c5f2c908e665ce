"""Gröbner bases and the ideal operations built on them."""

from castelnuovo.groebner.buchberger import GBStats, groebner_terms
from castelnuovo.groebner.hilbert import HilbertProfile, hilbert_numerator, monomial_profile
from castelnuovo.groebner.ideal import (
    GBInfo,
    Ideal,
    NotHomogeneous,
    buchberger,
    division,
    eliminate,
    hilbert_profile,
    ideal_member,
    is_reduced_basis,
    map_kernel,
    membership_certificate,
    minimal_power,
    normal_form,
    radical_member,
    s_polynomials_reduce_to_zero,
    to_ring,
)
from castelnuovo.groebner.matrix import (
    PolyMatrix,
    derivative_matrix,
    determinant,
    hessian,
    jacobian,
    minors,
)

__all__ = [
    "GBInfo", "GBStats", "HilbertProfile", "Ideal", "NotHomogeneous", "PolyMatrix",
    "buchberger", "derivative_matrix", "determinant", "division", "eliminate",
    "groebner_terms", "hessian", "hilbert_numerator", "hilbert_profile", "ideal_member",
    "is_reduced_basis", "jacobian", "map_kernel", "membership_certificate", "minimal_power",
    "minors", "monomial_profile", "normal_form", "radical_member",
    "s_polynomials_reduce_to_zero", "to_ring",
]
