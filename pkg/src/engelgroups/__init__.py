"""Engel conditions, nil and quasi-nil elements, and radicals of finite groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .group import (FiniteGroup, GroupElement, Subgroup, commutator, derived_length,
                    direct_product, from_matrices, from_permutations, from_table,
                    is_nilpotent, is_solvable, lower_central_series, derived_series,
                    nilpotency_class, normal_closure, quotient, subgroup_generated)
from .catalog import catalog, parse_catalog_name, standard_catalog
from .words import Word, engel_word, evaluate, iterated_engel, parse_word, tower_word
from .engel import baer_chain, engel_bound, is_nil_element, nil_element_set
from .radicals import (fitting_subgroup, pairwise_solvable, solvable_radical,
                       upper_radical_series)
from .quasinil import QuasiNilSolver, is_quasi_nil, nil_order, quasi_nil_set
from .varieties import (satisfies_engel_identity, satisfies_tower_identity,
                        satisfies_word_identity)

__all__ = [
    "FiniteGroup", "GroupElement", "Subgroup", "commutator", "derived_length",
    "direct_product", "from_matrices", "from_permutations", "from_table",
    "is_nilpotent", "is_solvable", "lower_central_series", "derived_series",
    "nilpotency_class", "normal_closure",
    "quotient", "subgroup_generated", "catalog", "parse_catalog_name",
    "standard_catalog", "Word", "engel_word", "evaluate", "iterated_engel",
    "parse_word", "tower_word", "baer_chain", "engel_bound", "is_nil_element",
    "nil_element_set", "fitting_subgroup", "pairwise_solvable", "solvable_radical",
    "upper_radical_series", "QuasiNilSolver", "is_quasi_nil", "nil_order",
    "quasi_nil_set", "satisfies_engel_identity", "satisfies_tower_identity",
    "satisfies_word_identity",
]
