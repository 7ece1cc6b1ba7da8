"""Exact-arithmetic construction and verification of up-to-sign symmetric
bases for polynomial differential form spaces on the standard simplex."""

from .forms import PolyForm, alt_indices, monomial_exponents
from .spaces import FormSpace, build_P, build_Pminus, build_space, \
    trace_free_subspace
from .symmetry import (SymmetricGroup, verify_invariant_up_to_sign,
                       z3_decompose, z3_obstruction)
from .bases import (ExistenceVerdict, construct_invariant_basis,
                    geometric_decomposability, whitney_basis)
from .duality import duality_map, verify_sign_equivariance
from .geodecomp import decomposition_map, extension_operator, filtration

__version__ = "0.1.0"

__all__ = [
    "PolyForm", "FormSpace", "SymmetricGroup", "ExistenceVerdict",
    "alt_indices", "monomial_exponents", "build_P", "build_Pminus",
    "build_space", "trace_free_subspace", "verify_invariant_up_to_sign",
    "z3_decompose", "z3_obstruction", "construct_invariant_basis",
    "geometric_decomposability", "whitney_basis", "duality_map",
    "verify_sign_equivariance", "decomposition_map", "extension_operator",
    "filtration",
]
