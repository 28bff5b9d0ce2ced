"""Maximum carpool matching: exact fixed-role solver, local search
2-approximation (unweighted) and super-matching 3-approximation."""

from carpool.core import (
    Arc,
    D,
    Instance,
    Matching,
    P,
    Role,
    RoleSets,
    classify,
    matching_weight,
    new_instance,
    prune_negative_arcs,
    validate_matching,
)
from carpool.fixed import build_fixed_network, roles_from_drivers, solve_fixed
from carpool.local_search import is_local_optimum, solve_local_search
from carpool.oracle import exact_fixed_optimum, exact_optimum, exact_super_optimum
from carpool.supermatching import solve_approx3, solve_super_matching

__all__ = [
    "Arc",
    "D",
    "Instance",
    "Matching",
    "P",
    "Role",
    "RoleSets",
    "build_fixed_network",
    "classify",
    "exact_fixed_optimum",
    "exact_optimum",
    "exact_super_optimum",
    "is_local_optimum",
    "matching_weight",
    "new_instance",
    "prune_negative_arcs",
    "roles_from_drivers",
    "solve_approx3",
    "solve_fixed",
    "solve_local_search",
    "solve_super_matching",
    "validate_matching",
]
