"""Subgroup patterns and tables of marks of finite permutation groups.

The package computes, for a finite permutation group G, representatives
of the conjugacy classes of subgroups together with the table of marks
(the subgroup pattern), either by extending the pattern of a normal
subgroup of prime index step by step along a composition series, or by
a brute-force subgroup-lattice oracle used for cross-validation.
"""

from .perms import Perm, act, compose, inverse, parse_perm
from .groups import (
    PermGroup,
    Subgroup,
    SeriesChain,
    are_conjugate_subgroups,
    centralizer,
    composition_series,
    coset_action,
    is_solvable,
    normalizer,
    quotient_group,
)
from .extension import (
    ExtensionContext,
    extend_classes,
    extension_elements,
    outer_classes,
    split_inner_classes,
    subgroup_classes_solvable,
)
from .marks import (
    SubgroupPattern,
    extend_table_of_marks,
    mark_fixed_cosets,
    solvable_pattern_chain,
    table_of_marks_solvable,
    validate_pattern,
    verify_dress,
)
from .lattice import (
    all_subgroups_brute,
    compare_patterns,
    subgroup_classes_search,
    table_of_marks_brute,
)
from .catalog import CATALOG

__all__ = [
    "Perm", "act", "compose", "inverse", "parse_perm",
    "PermGroup", "Subgroup", "SeriesChain",
    "are_conjugate_subgroups", "centralizer", "composition_series",
    "coset_action", "is_solvable", "normalizer", "quotient_group",
    "ExtensionContext", "extend_classes", "extension_elements",
    "outer_classes", "split_inner_classes", "subgroup_classes_solvable",
    "SubgroupPattern", "extend_table_of_marks", "mark_fixed_cosets",
    "solvable_pattern_chain", "table_of_marks_solvable",
    "validate_pattern", "verify_dress",
    "all_subgroups_brute", "compare_patterns", "subgroup_classes_search",
    "table_of_marks_brute",
    "CATALOG",
]

__version__ = "0.1.0"
