"""
Error types raised by weyldft.

Input problems derive from ValueError, resource limits from RuntimeError,
so callers that only know the builtin hierarchy still catch them.
"""


class WeylDFTError(Exception):
    """Base class for all library errors"""


class InvalidAlgebra(WeylDFTError, ValueError):
    """Unknown family or rank outside the family bounds"""


class InadmissibleSign(WeylDFTError, ValueError):
    """Short/long sign homomorphism requested for a simply laced algebra"""


class MalformedKac(WeylDFTError, ValueError):
    """Kac coordinates with negative entries or the wrong level"""


class LevelTooSmall(WeylDFTError, ValueError):
    """M does not exceed the generalized Coxeter number m^sigma"""

    def __init__(self, M: int, bound: int):
        self.M = M
        self.bound = bound
        super().__init__(f"M={M} must exceed m^sigma={bound}")


class GridMismatch(WeylDFTError, ValueError):
    """Samples or coefficients not aligned with the expected grid"""


class GroupTooLarge(WeylDFTError, RuntimeError):
    """Weyl group order above the enumeration cap"""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"Weyl group of order {order} exceeds enumeration cap {cap}")
