"""
Root system data and the groups acting on it

Cartan data per simple Lie algebra, the finite Weyl group, the affine Weyl
group stabilizers and the group Gamma permuting Kac coordinates.
"""

from .models import AlgebraType, Family, SignHom, KacVector, Weight, WeylElement, GammaElement, RootSystemData
from .rootdata import build, get_root_data, rho_sigma, generalized_coxeter, weyl_order, admissible_signs
from .weyl import reflect_weight, enumerate_weyl, factorize, sign_value
from .affine import reduce_point, epsilon, dual_stab_order, h_PM
from .gamma import gamma_group, act, orbit_and_stab, lex_max, sigma_on_stab, StabSign

__all__ = [
    "AlgebraType",
    "Family",
    "SignHom",
    "KacVector",
    "Weight",
    "WeylElement",
    "GammaElement",
    "RootSystemData",
    "build",
    "get_root_data",
    "rho_sigma",
    "generalized_coxeter",
    "weyl_order",
    "admissible_signs",
    "reflect_weight",
    "enumerate_weyl",
    "factorize",
    "sign_value",
    "reduce_point",
    "epsilon",
    "dual_stab_order",
    "h_PM",
    "gamma_group",
    "act",
    "orbit_and_stab",
    "lex_max",
    "sigma_on_stab",
    "StabSign",
]
