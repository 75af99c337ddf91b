from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple
import re

from pydantic import BaseModel, ConfigDict

from weyldft.errors import InvalidAlgebra, MalformedKac


class Family(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


# Smallest admissible rank per family; E, F and G list their exact ranks.
RANK_BOUNDS: Dict[Family, Tuple[int, ...]] = {
    Family.A: (1,),
    Family.B: (3,),
    Family.C: (2,),
    Family.D: (4,),
    Family.E: (6, 7, 8),
    Family.F: (4,),
    Family.G: (2,),
}

_LABEL = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


class AlgebraType(BaseModel):
    """Cartan type label such as A2 or E8"""
    model_config = ConfigDict(frozen=True)

    family: Family
    rank: int

    @property
    def label(self) -> str:
        return f"{self.family.value}{self.rank}"

    def __str__(self) -> str:
        return self.label

    def is_valid(self) -> bool:
        bounds = RANK_BOUNDS[self.family]
        if self.family in (Family.A, Family.B, Family.C, Family.D):
            return self.rank >= bounds[0]
        return self.rank in bounds

    @classmethod
    def parse(cls, label: str) -> "AlgebraType":
        """Parse 'A2', 'b3', 'E8'; rank bounds are enforced"""
        match = _LABEL.match(label)
        if not match:
            raise InvalidAlgebra(f"Cannot parse algebra label '{label}'")
        algebra = cls(family=Family(match.group(1).upper()), rank=int(match.group(2)))
        if not algebra.is_valid():
            raise InvalidAlgebra(f"Rank {algebra.rank} is out of bounds for family {algebra.family.value}")
        return algebra


class SignHom(str, Enum):
    IDENTITY = "identity"
    DET = "det"
    SHORT = "short"
    LONG = "long"

    @property
    def short_name(self) -> str:
        return _SHORT_NAMES[self]

    @classmethod
    def parse(cls, text: str) -> "SignHom":
        """Accept the command-line spelling 1/e/s/l or the full value"""
        key = text.strip().lower()
        for sigma, short in _SHORT_NAMES.items():
            if key in (short, sigma.value):
                return sigma
        raise ValueError(f"Unknown sign homomorphism '{text}'")


_SHORT_NAMES = {
    SignHom.IDENTITY: "1",
    SignHom.DET: "e",
    SignHom.SHORT: "s",
    SignHom.LONG: "l",
}


class KacVector(BaseModel):
    """Kac coordinates [b_0, ..., b_n] together with their weighted level"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: Tuple[Fraction, ...]
    level: Fraction

    @classmethod
    def build(cls, entries: Sequence, weights: Sequence[int]) -> "KacVector":
        """Compute the level from (n+1) weights, the zeroth being 1"""
        values = tuple(Fraction(x) for x in entries)
        if len(values) != len(weights):
            raise MalformedKac(f"Expected {len(weights)} Kac coordinates, got {len(values)}")
        return cls(entries=values, level=sum(w * x for w, x in zip(weights, values)))

    def check(self, weights: Sequence[int]) -> None:
        if len(self.entries) != len(weights):
            raise MalformedKac(f"Expected {len(weights)} Kac coordinates, got {len(self.entries)}")
        if any(x < 0 for x in self.entries):
            raise MalformedKac(f"Negative Kac coordinate in {list(map(str, self.entries))}")
        total = sum(w * x for w, x in zip(weights, self.entries))
        if total != self.level or self.level <= 0:
            raise MalformedKac(f"Weighted sum {total} does not match level {self.level}")

    def as_ints(self) -> Tuple[int, ...]:
        if any(x.denominator != 1 for x in self.entries):
            raise MalformedKac("Kac vector is not integral")
        return tuple(int(x) for x in self.entries)


class Weight(BaseModel):
    """Integer coordinates in the fundamental weight basis"""
    model_config = ConfigDict(frozen=True)

    coords: Tuple[int, ...]


class WeylElement(BaseModel):
    """Weyl group element as an integer matrix on fundamental-weight coordinates"""
    model_config = ConfigDict(frozen=True)

    matrix: Tuple[Tuple[int, ...], ...]
    word: Optional[Tuple[int, ...]] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def apply(self, coords: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(row, coords)) for row in self.matrix)


class GammaElement(BaseModel):
    """Element of the group Gamma acting on Kac coordinates by a permutation"""
    model_config = ConfigDict(frozen=True)

    perm: Tuple[int, ...]
    label: str
    sign_e: int
    sign_s: Optional[int] = None
    sign_l: Optional[int] = None

    def sign(self, sigma: SignHom) -> int:
        if sigma == SignHom.IDENTITY:
            return 1
        if sigma == SignHom.DET:
            return self.sign_e
        value = self.sign_s if sigma == SignHom.SHORT else self.sign_l
        if value is None:
            raise ValueError(f"{sigma.value} sign is undefined for {self.label}")
        return value


class RootSystemData(BaseModel):
    """Immutable table of everything the discretization needs about one algebra"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    algebra: AlgebraType
    cartan: Tuple[Tuple[int, ...], ...]
    cartan_inv: Tuple[Tuple[Fraction, ...], ...]
    lengths: Tuple[int, ...]
    marks: Tuple[int, ...]
    comarks: Tuple[int, ...]
    short_set: Tuple[int, ...]
    long_set: Tuple[int, ...]
    coxeter: int
    connection_index: int
    unit_comark_indices: Tuple[int, ...]
    weyl_order: int
    gamma_table: Tuple[GammaElement, ...]

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def label(self) -> str:
        return self.algebra.label

    @property
    def simply_laced(self) -> bool:
        return not self.long_set

    @property
    def point_weights(self) -> Tuple[int, ...]:
        """Weights of Kac coordinates on the F side: (1, m_1, ..., m_n)"""
        return (1,) + self.marks

    @property
    def weight_weights(self) -> Tuple[int, ...]:
        """Weights of Kac coordinates on the F_Q side: (1, m^v_1, ..., m^v_n)"""
        return (1,) + self.comarks

    @property
    def sign_table(self) -> Dict[Tuple[str, SignHom], int]:
        table = {}
        for gamma in self.gamma_table:
            for sigma in SignHom:
                if sigma in (SignHom.SHORT, SignHom.LONG) and self.simply_laced:
                    continue
                table[(gamma.label, sigma)] = gamma.sign(sigma)
        return table
