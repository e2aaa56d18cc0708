"""Coinciding representation functions: profiles, Hilbert cubes, exact checks and search."""

__version__ = "0.1.0"

from .cube import CubeGenerators, PreconditionError, cube_parts, is_half_nondegenerate
from .genfun import criterion_eq1, from_set, unit_root_multiplicity
from .partition import PartitionSpec, chenlev_generators, chenlev_sets, verify_partition
from .polynomial import IntPolynomial
from .sets import IntegerSet, Variant, rep_function
from .structure import check_conditions, classify_pair, decompose, solve_coinciding

__all__ = [
    "CubeGenerators",
    "IntPolynomial",
    "IntegerSet",
    "PartitionSpec",
    "PreconditionError",
    "Variant",
    "chenlev_generators",
    "chenlev_sets",
    "check_conditions",
    "classify_pair",
    "criterion_eq1",
    "cube_parts",
    "decompose",
    "from_set",
    "is_half_nondegenerate",
    "rep_function",
    "solve_coinciding",
    "unit_root_multiplicity",
    "verify_partition",
]
