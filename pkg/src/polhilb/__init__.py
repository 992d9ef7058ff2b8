"""Polarizations of powers of the maximal ideal and their Hilbert-scheme tangent spaces."""

from .errors import MalformedInputError, PolhilbError, PreconditionError, StructuralError
from .monomials import Monomial, MonomialIdeal, VariableUniverse, hilbert_numerator, minimalize
from .polarize import (
    DepolarizationSpec,
    box_polarization,
    depolarize,
    is_polarization,
    power_ideal,
    sqfree_power_ideal,
    standard_polarization,
    trivial_polarization,
)
from .tangent import deformation_basis, tangent_dimension, variable_deformation_dim
from .trees import LabeledTree, predicted_tangent_dim, tree_ideal, tree_index

__version__ = "0.1.0"

__all__ = [
    "DepolarizationSpec",
    "LabeledTree",
    "MalformedInputError",
    "Monomial",
    "MonomialIdeal",
    "PolhilbError",
    "PreconditionError",
    "StructuralError",
    "VariableUniverse",
    "box_polarization",
    "deformation_basis",
    "depolarize",
    "hilbert_numerator",
    "is_polarization",
    "minimalize",
    "power_ideal",
    "predicted_tangent_dim",
    "sqfree_power_ideal",
    "standard_polarization",
    "tangent_dimension",
    "tree_ideal",
    "tree_index",
    "trivial_polarization",
    "variable_deformation_dim",
]
