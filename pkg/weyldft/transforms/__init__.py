"""
Orbit functions and discrete transforms

Weyl (phi) and Hartley (zeta) orbit functions on F^sigma_{Q^vee,M}, the
discrete scalar product and the forward/inverse transforms.
"""

from .models import PhaseFraction, SampleTable, Spectrum
from .transforms import (
    WeylTransform,
    get_transform,
    eval_phi,
    eval_zeta,
    eval_phi_at,
    evaluation_matrix,
    sample_function,
    scalar_product,
    forward,
    inverse,
    inverse_on_grid,
    hartley_forward,
    hartley_inverse,
    roundtrip_error,
    plancherel_gap,
    label_symmetry_check,
    vanishes_on_grid,
    boundary_vanishing,
    exponential_sum,
)


__all__ = [
    "PhaseFraction",
    "SampleTable",
    "Spectrum",
    "WeylTransform",
    "get_transform",
    "eval_phi",
    "eval_zeta",
    "eval_phi_at",
    "evaluation_matrix",
    "sample_function",
    "scalar_product",
    "forward",
    "inverse",
    "inverse_on_grid",
    "hartley_forward",
    "hartley_inverse",
    "roundtrip_error",
    "plancherel_gap",
    "label_symmetry_check",
    "vanishes_on_grid",
    "boundary_vanishing",
    "exponential_sum",
]
