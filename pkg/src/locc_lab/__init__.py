"""Orthogonal product state families: construction, local-indistinguishability
certificates, and entanglement-assisted discrimination protocols."""

from .families import FamilyParams, ParameterError, build, expected_count
from .states import Ket, ProductState, StateSet, inner_product, verify_orthogonality

__version__ = "0.1.0"
