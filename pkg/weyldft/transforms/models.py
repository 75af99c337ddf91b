from fractions import Fraction
from typing import Any, Dict, List
import cmath

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from weyldft.errors import GridMismatch
from weyldft.grids.models import GridPoint, GridWeight
from weyldft.lattice.models import SignHom


def _pairs(values: np.ndarray) -> List[List[float]]:
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def _from_pairs(raw: List) -> np.ndarray:
    if raw and isinstance(raw[0], (list, tuple)):
        return np.array([complex(re, im) for re, im in raw])
    return np.asarray(raw, dtype=float)


class PhaseFraction(BaseModel):
    """Exact phase k/M, reduced into [0, 1)"""
    model_config = ConfigDict(frozen=True)

    numerator: int
    denominator: int

    @classmethod
    def of(cls, k: int, M: int) -> "PhaseFraction":
        if M < 1:
            raise ValueError(f"Phase denominator must be positive, got {M}")
        return cls(numerator=k % M, denominator=M)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def exp(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.numerator / self.denominator)


class SampleTable(BaseModel):
    """Function values on the grid F^sigma_{Q^vee,M}"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebra: str
    sigma: SignHom
    M: int
    grid: List[GridPoint]
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _to_array(cls, value: Any) -> np.ndarray:
        array = np.asarray(value)
        if not (np.issubdtype(array.dtype, np.complexfloating) or np.issubdtype(array.dtype, np.floating)):
            array = array.astype(float)
        return array

    def check(self) -> "SampleTable":
        if len(self.values) != len(self.grid):
            raise GridMismatch(f"{len(self.values)} samples for a grid of {len(self.grid)} points")
        return self

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values) or bool(np.all(np.imag(self.values) == 0))

    def export(self, weighted: bool = False) -> np.ndarray:
        """Raw samples, or epsilon-weighted samples eps(s) f(s)"""
        if not weighted:
            return self.values
        return np.array([p.eps for p in self.grid]) * self.values

    def to_payload(self, weighted: bool = False) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "M": self.M,
            "sigma": self.sigma.value,
            "weighted": weighted,
            "grid": [{"kac": list(p.kac), "q": list(p.q), "eps": p.eps} for p in self.grid],
            "values": _pairs(self.export(weighted)),
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "SampleTable":
        M = payload["M"]
        grid = [GridPoint(kac=tuple(p["kac"]), q=tuple(p["q"]), eps=p["eps"], M=M) for p in payload["grid"]]
        values = _from_pairs(payload["values"])
        if len(values) != len(grid):
            raise GridMismatch(f"{len(values)} samples for a grid of {len(grid)} points")
        if payload.get("weighted"):
            values = values / np.array([p.eps for p in grid])
        return cls(algebra=payload["algebra"], sigma=SignHom(payload["sigma"]), M=M, grid=grid, values=values)


class Spectrum(BaseModel):
    """Coefficients c_lambda (Fourier) or d_lambda (Hartley) over Lambda^sigma_{P,M}"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    algebra: str
    sigma: SignHom
    M: int
    hartley: bool = False
    weights: List[GridWeight]
    coeffs: np.ndarray

    def check(self) -> "Spectrum":
        if len(self.coeffs) != len(self.weights):
            raise GridMismatch(f"{len(self.coeffs)} coefficients for {len(self.weights)} weights")
        return self

    def to_payload(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "M": self.M,
            "sigma": self.sigma.value,
            "hartley": self.hartley,
            "weights": [{"kac": list(w.kac), "h": w.h} for w in self.weights],
            "coeffs": [float(c) for c in self.coeffs] if self.hartley else _pairs(self.coeffs),
        }
