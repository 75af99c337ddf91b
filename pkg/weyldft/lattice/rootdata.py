"""
Per-family root data: Cartan matrices, marks, comarks and root lengths.

Conventions: C[i][j] = <alpha_i, alpha_j^vee>, simple roots numbered from 1
in the tables below and stored 0-based. Root lengths are squared lengths with
the short roots normalized to 1. Node 0 of Kac coordinates is the affine node.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple, Union
import logging

import sympy

from weyldft.errors import InadmissibleSign, InvalidAlgebra
from weyldft.lattice.gamma import build_gamma_table
from weyldft.lattice.models import AlgebraType, Family, KacVector, RootSystemData, SignHom

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


def _chain(n: int) -> List[Tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def dynkin_edges(family: Family, n: int) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram in 1-based node numbering"""
    if family in (Family.A, Family.B, Family.C, Family.F, Family.G):
        return _chain(n)
    if family == Family.D:
        return _chain(n - 1) + [(n - 2, n)]
    if family == Family.E:
        if n == 6:
            return _chain(5) + [(3, 6)]
        if n == 7:
            return _chain(6) + [(3, 7)]
        return [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    raise InvalidAlgebra(f"Unknown family {family}")


def root_lengths(family: Family, n: int) -> Tuple[int, ...]:
    if family == Family.B:
        return (2,) * (n - 1) + (1,)
    if family == Family.C:
        return (1,) * (n - 1) + (2,)
    if family == Family.F:
        return (2, 2, 1, 1)
    if family == Family.G:
        return (1, 3)
    return (1,) * n


def cartan_matrix(family: Family, n: int) -> Matrix:
    """Cartan matrix of any connected type, without family rank bounds"""
    lengths = root_lengths(family, n)
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in dynkin_edges(family, n):
        i, j = a - 1, b - 1
        bond = max(lengths[i], lengths[j])
        rows[i][j] = -(bond // lengths[j])
        rows[j][i] = -(bond // lengths[i])
    return tuple(tuple(row) for row in rows)


def weyl_group_order(family: Family, n: int) -> int:
    if family == Family.A:
        return factorial(n + 1)
    if family in (Family.B, Family.C):
        return 2**n * factorial(n)
    if family == Family.D:
        return 2 ** (n - 1) * factorial(n)
    return {
        (Family.E, 6): 51840,
        (Family.E, 7): 2903040,
        (Family.E, 8): 696729600,
        (Family.F, 4): 1152,
        (Family.G, 2): 12,
    }[(family, n)]


# Marks of the highest root and comarks of the highest dual root.
def _marks_table(family: Family, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if family == Family.A:
        return (1,) * n, (1,) * n
    if family == Family.B:
        return (1,) + (2,) * (n - 1), (2,) * (n - 1) + (1,)
    if family == Family.C:
        return (2,) * (n - 1) + (1,), (1,) + (2,) * (n - 1)
    if family == Family.D:
        marks = (1,) + (2,) * (n - 3) + (1, 1)
        return marks, marks
    if family == Family.E:
        marks = {
            6: (1, 2, 3, 2, 1, 2),
            7: (2, 3, 4, 3, 2, 1, 2),
            8: (2, 3, 4, 6, 5, 4, 3, 2),
        }[n]
        return marks, marks
    if family == Family.F:
        return (2, 3, 4, 2), (2, 4, 3, 2)
    return (3, 2), (2, 3)


COXETER_NUMBERS = {Family.E: {6: 12, 7: 18, 8: 30}, Family.F: {4: 12}, Family.G: {2: 6}}


def _expected_coxeter(family: Family, n: int) -> int:
    if family == Family.A:
        return n + 1
    if family in (Family.B, Family.C):
        return 2 * n
    if family == Family.D:
        return 2 * n - 2
    return COXETER_NUMBERS[family][n]


def _validate(data: RootSystemData) -> None:
    """Fail loudly on any transcription error in the embedded tables"""
    C, n, d = data.cartan, data.rank, data.lengths
    label = data.label
    for i in range(n):
        if C[i][i] != 2:
            raise RuntimeError(f"{label}: diagonal Cartan entry {i + 1} is {C[i][i]}")
        for j in range(n):
            if i != j and C[i][j] > 0:
                raise RuntimeError(f"{label}: positive off-diagonal Cartan entry ({i + 1},{j + 1})")
            if C[i][j] * d[j] != C[j][i] * d[i]:
                raise RuntimeError(f"{label}: Cartan matrix not symmetrizable at ({i + 1},{j + 1})")
    det = sympy.Matrix(C).det()
    if det != data.connection_index:
        raise RuntimeError(f"{label}: det C = {det} but index of connection is {data.connection_index}")
    if 1 + sum(data.marks) != data.coxeter or 1 + sum(data.comarks) != data.coxeter:
        raise RuntimeError(f"{label}: marks/comarks do not sum to the Coxeter number {data.coxeter}")
    if len(data.unit_comark_indices) + 1 != data.connection_index:
        raise RuntimeError(f"{label}: |J| + 1 != c")
    if len(data.gamma_table) != data.connection_index:
        raise RuntimeError(f"{label}: Gamma has {len(data.gamma_table)} elements, expected c")

    gram = gram_matrix(data)
    for name, coeffs, length in (
        ("highest root", highest_root(data), max(d)),
        ("highest short root", highest_short_root(data), min(d)),
    ):
        pairing = [sum(coeffs[k] * C[k][j] for k in range(n)) for j in range(n)]
        if any(x < 0 for x in pairing):
            raise RuntimeError(f"{label}: {name} is not dominant")
        if _norm(gram, coeffs) != length:
            raise RuntimeError(f"{label}: {name} has the wrong length")


def gram_matrix(R: RootSystemData) -> Tuple[Tuple[Fraction, ...], ...]:
    """(alpha_i, alpha_j) = C_ij d_j / 2"""
    n = R.rank
    return tuple(tuple(Fraction(R.cartan[i][j] * R.lengths[j], 2) for j in range(n)) for i in range(n))


def _norm(gram, x: Sequence) -> Fraction:
    n = len(x)
    return sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))


def highest_root(R: RootSystemData) -> Tuple[Fraction, ...]:
    """Coefficients of the highest root xi in the simple root basis"""
    return tuple(Fraction(m) for m in R.marks)


def highest_short_root(R: RootSystemData) -> Tuple[Fraction, ...]:
    """Coefficients of the highest short root, the dual of eta = sum m^v_i alpha_i^vee"""
    short = min(R.lengths)
    return tuple(Fraction(m * short, d) for m, d in zip(R.comarks, R.lengths))


@lru_cache(maxsize=None)
def build(t: AlgebraType) -> RootSystemData:
    if not t.is_valid():
        raise InvalidAlgebra(f"Rank {t.rank} is out of bounds for family {t.family.value}")
    n = t.rank
    C = cartan_matrix(t.family, n)
    lengths = root_lengths(t.family, n)
    marks, comarks = _marks_table(t.family, n)

    inverse = sympy.Matrix(C).inv()
    cartan_inv = tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(n)) for i in range(n)
    )

    if len(set(lengths)) == 1:
        short_set, long_set = tuple(range(1, n + 1)), ()
    else:
        short_set = tuple(i + 1 for i in range(n) if lengths[i] == min(lengths))
        long_set = tuple(i + 1 for i in range(n) if lengths[i] == max(lengths))

    unit = tuple(i + 1 for i in range(n) if comarks[i] == 1)
    data = RootSystemData(
        algebra=t,
        cartan=C,
        cartan_inv=cartan_inv,
        lengths=lengths,
        marks=marks,
        comarks=comarks,
        short_set=short_set,
        long_set=long_set,
        coxeter=_expected_coxeter(t.family, n),
        connection_index=len(unit) + 1,
        unit_comark_indices=unit,
        weyl_order=weyl_group_order(t.family, n),
        gamma_table=build_gamma_table(t, comarks, simply_laced=not long_set),
    )
    _validate(data)
    logger.debug(f"Built root data for {t.label}: |W|={data.weyl_order}, c={data.connection_index}")
    return data


def get_root_data(algebra: Union[str, AlgebraType, RootSystemData]) -> RootSystemData:
    """Accept a label, a type or ready-made data"""
    if isinstance(algebra, RootSystemData):
        return algebra
    if isinstance(algebra, str):
        algebra = AlgebraType.parse(algebra)
    return build(algebra)


def admissible_signs(R: RootSystemData) -> List[SignHom]:
    if R.simply_laced:
        return [SignHom.IDENTITY, SignHom.DET]
    return list(SignHom)


def check_sign(R: RootSystemData, sigma: SignHom) -> None:
    if sigma in (SignHom.SHORT, SignHom.LONG) and R.simply_laced:
        raise InadmissibleSign(f"{sigma.value} sign homomorphism needs two root lengths, {R.label} is simply laced")


def rho_sigma(R: RootSystemData, sigma: SignHom) -> KacVector:
    """Kac pattern [rho_0, ..., rho_n] of the shift vector rho^sigma"""
    check_sign(R, sigma)
    n = R.rank
    if sigma == SignHom.IDENTITY:
        entries = [0] * (n + 1)
    elif sigma == SignHom.DET:
        entries = [1] * (n + 1)
    elif sigma == SignHom.SHORT:
        entries = [1] + [1 if i in R.short_set else 0 for i in range(1, n + 1)]
    else:
        entries = [0] + [1 if i in R.long_set else 0 for i in range(1, n + 1)]
    return KacVector.build(entries, R.weight_weights)


def point_pattern(R: RootSystemData, sigma: SignHom) -> Tuple[int, ...]:
    """Lower bounds of the Kac coordinates of points in F^sigma"""
    check_sign(R, sigma)
    n = R.rank
    if sigma == SignHom.IDENTITY:
        return (0,) * (n + 1)
    if sigma == SignHom.DET:
        return (1,) * (n + 1)
    if sigma == SignHom.SHORT:
        return (0,) + tuple(1 if i in R.short_set else 0 for i in range(1, n + 1))
    return (1,) + tuple(1 if i in R.long_set else 0 for i in range(1, n + 1))


def generalized_coxeter(R: RootSystemData, sigma: SignHom) -> int:
    rho = rho_sigma(R, sigma)
    return int(sum(w * x for w, x in zip(R.weight_weights, rho.entries)))


def short_long_coxeter(R: RootSystemData) -> Dict[SignHom, int]:
    """m^s = sum of short marks, m^l = sum of long marks + 1"""
    if R.simply_laced:
        raise InadmissibleSign(f"{R.label} has a single root length")
    short = sum(R.marks[i - 1] for i in R.short_set)
    long = sum(R.marks[i - 1] for i in R.long_set) + 1
    return {SignHom.SHORT: short, SignHom.LONG: long}


def weyl_order(R: RootSystemData) -> int:
    return R.weyl_order


def summary(R: RootSystemData) -> Dict:
    return {
        "algebra": R.label,
        "cartan": [list(row) for row in R.cartan],
        "marks": list(R.marks),
        "comarks": list(R.comarks),
        "short_set": list(R.short_set),
        "long_set": list(R.long_set),
        "coxeter": R.coxeter,
        "connection_index": R.connection_index,
        "unit_comark_indices": list(R.unit_comark_indices),
        "weyl_order": R.weyl_order,
        "gamma": [
            {"label": g.label, "perm": list(g.perm), "sign_e": g.sign_e, "sign_s": g.sign_s, "sign_l": g.sign_l}
            for g in R.gamma_table
        ],
        "generalized_coxeter": {s.short_name: generalized_coxeter(R, s) for s in admissible_signs(R)},
    }
