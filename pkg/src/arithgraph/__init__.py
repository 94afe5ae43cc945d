"""Arithmetical structures on graphs: enumeration, transfers and critical groups."""

from .actions import apply_rotation, canonical_representative, h_orbit
from .critical import (CriticalGroup, c3_group_formula, critical_group, direct_product,
                       fan_group_decomposition, groups_isomorphic, spanning_tree_count)
from .enumeration import (SearchLimits, StructureSet, count_lower_bound_check,
                          enumerate_all, enumerate_r_bruteforce, expected_count,
                          glue_c3_structures)
from .errors import ArithGraphError
from .graphs import Graph, make_family, make_fan
from .linalg import determinant, smith_normal_form
from .structures import ArithPair, d_from_r, r_from_d, verify

__version__ = "0.1.0"

__all__ = [
    "ArithGraphError", "ArithPair", "CriticalGroup", "Graph", "SearchLimits",
    "StructureSet", "apply_rotation", "c3_group_formula", "canonical_representative",
    "count_lower_bound_check", "critical_group", "d_from_r", "determinant",
    "direct_product", "enumerate_all", "enumerate_r_bruteforce", "expected_count",
    "fan_group_decomposition", "glue_c3_structures", "groups_isomorphic", "h_orbit",
    "make_fan", "make_family", "r_from_d", "smith_normal_form", "spanning_tree_count",
    "verify",
]
