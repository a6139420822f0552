"""Macaulay matrices, resultant vanishing tests and hardness-reduction gadgets, in exact arithmetic."""

from .field import FieldContext, FieldElement, find_irreducible, is_irreducible, parse_field_spec
from .macaulay import MacaulaySpec, VariableOrdering, cyclic_orderings, macaulay_dense, macaulay_entry
from .ordering import DegreeSlice, rank, slice_count, unrank
from .polysys import ANY_DEGREE, MultiPoly, PolySystem, evaluate, homogenize, is_homogeneous, system_degree
from .resultant import Outcome, Verdict, determinant, resultant_vanishes, sylvester
from .brute import brute_roots

__all__ = [
    "ANY_DEGREE", "DegreeSlice", "FieldContext", "FieldElement", "MacaulaySpec", "MultiPoly",
    "Outcome", "PolySystem", "VariableOrdering", "Verdict", "brute_roots", "cyclic_orderings",
    "determinant", "evaluate", "find_irreducible", "homogenize", "is_homogeneous", "is_irreducible",
    "macaulay_dense", "macaulay_entry", "parse_field_spec", "rank", "resultant_vanishes",
    "slice_count", "sylvester", "system_degree", "unrank",
]
