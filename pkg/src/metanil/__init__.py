"""Finite permutation groups and the coprime-order product criterion for
nilpotency of lower central terms."""

__version__ = "0.1.0"

from .errors import GroupError, TooLarge
from .perm import (
    ElementSet,
    Group,
    GroupSpec,
    Permutation,
    build_group,
    commutator,
    compose,
    contains,
    element_order,
    elements,
    inverse,
)
from .series import Subgroup, gamma_values, is_nilpotent, lower_central_series
from .fitting import fitting_height, fitting_subgroup, is_metanilpotent
from .criterion import check_condition, minimal_k, verify_corollary, verify_theorem

__all__ = [
    "ElementSet", "Group", "GroupError", "GroupSpec", "Permutation", "Subgroup", "TooLarge",
    "build_group", "check_condition", "commutator", "compose", "contains", "element_order",
    "elements", "fitting_height", "fitting_subgroup", "gamma_values", "inverse",
    "is_metanilpotent", "is_nilpotent", "lower_central_series", "minimal_k",
    "verify_corollary", "verify_theorem",
]
