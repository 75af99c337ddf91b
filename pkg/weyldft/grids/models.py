from typing import Tuple

from pydantic import BaseModel, ConfigDict


class GridPoint(BaseModel):
    """Point of F^sigma_{Q^vee,M}: Kac coordinates at level M, dual-root coordinates and epsilon"""
    model_config = ConfigDict(frozen=True)

    kac: Tuple[int, ...]
    q: Tuple[int, ...]
    eps: int
    M: int


class GridWeight(BaseModel):
    """Weight of Lambda^sigma_{P,M} with its h_{P,M} coefficient"""
    model_config = ConfigDict(frozen=True)

    kac: Tuple[int, ...]
    h: int
    M: int

    @property
    def coords(self) -> Tuple[int, ...]:
        """Fundamental-weight coordinates (lambda_1, ..., lambda_n)"""
        return self.kac[1:]
