"""
Grids of the dual-root lattice discretization

Point sets F^sigma_{Q^vee,M}, weight sets Lambda^sigma_{P,M} and their
auxiliary sets, plus JSON/CSV serialization.
"""

from .models import GridPoint, GridWeight
from .grids import (
    kac_solutions,
    point_set,
    weight_set,
    weight_superset,
    tilde_sets,
    rho_shift,
    boundary_weights,
    dual_weight_point_set,
    point_candidates,
    congruence_general,
    congruence_simplified,
    dual_root_coords,
    within_hypothesis,
)
from .serialize import points_document, weights_document, dumps

__all__ = [
    "GridPoint",
    "GridWeight",
    "kac_solutions",
    "point_set",
    "weight_set",
    "weight_superset",
    "tilde_sets",
    "rho_shift",
    "boundary_weights",
    "dual_weight_point_set",
    "point_candidates",
    "congruence_general",
    "congruence_simplified",
    "dual_root_coords",
    "within_hypothesis",
    "points_document",
    "weights_document",
    "dumps",
]
