from pydantic import BaseModel, ConfigDict

from weyldft.lattice.models import AlgebraType, SignHom


class CountQuery(BaseModel):
    """One (algebra, sigma, M) cardinality question; admissibility is checked on use"""
    model_config = ConfigDict(frozen=True)

    algebra: AlgebraType
    sigma: SignHom
    M: int


class SweepRow(BaseModel):
    """One line of the counting sweep CSV"""
    algebra: str
    sigma: str
    M: int
    closed_form: int
    burnside: int
    enum_points: int
    enum_weights: int

    @property
    def agree(self) -> bool:
        return self.closed_form == self.burnside == self.enum_points == self.enum_weights
