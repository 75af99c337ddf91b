"""
weyldft: discrete Fourier-Weyl and Hartley-Weyl transforms on the refined dual root lattice

Root data for every simple Lie algebra, the point and weight grids of the
discretization, closed-form cardinalities and the transforms between them.
"""

__version__ = "1.0.0"

from .errors import (
    WeylDFTError,
    InvalidAlgebra,
    InadmissibleSign,
    MalformedKac,
    LevelTooSmall,
    GridMismatch,
    GroupTooLarge,
)
from .lattice import AlgebraType, SignHom, RootSystemData, get_root_data, generalized_coxeter
from .grids import GridPoint, GridWeight, point_set, weight_set
from .counting import CountQuery, closed_form, burnside_count
from .transforms import SampleTable, Spectrum, forward, inverse, hartley_forward, hartley_inverse

__all__ = [
    "__version__",
    "WeylDFTError",
    "InvalidAlgebra",
    "InadmissibleSign",
    "MalformedKac",
    "LevelTooSmall",
    "GridMismatch",
    "GroupTooLarge",
    "AlgebraType",
    "SignHom",
    "RootSystemData",
    "get_root_data",
    "generalized_coxeter",
    "GridPoint",
    "GridWeight",
    "point_set",
    "weight_set",
    "CountQuery",
    "closed_form",
    "burnside_count",
    "SampleTable",
    "Spectrum",
    "forward",
    "inverse",
    "hartley_forward",
    "hartley_inverse",
]
