"""
Affine Weyl group machinery on Kac coordinates.

Stabilizer orders come from the extended Dynkin diagram: the stabilizer of a
point of F (or F_Q) is the parabolic subgroup generated by the reflections
whose Kac coordinate vanishes, so its order is the Weyl group order of the
induced subdiagram. Exact rational arithmetic throughout.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from weyldft.errors import MalformedKac
from weyldft.lattice.gamma import stabilizer_order
from weyldft.lattice.models import AlgebraType, Family, KacVector, RootSystemData, WeylElement
from weyldft.lattice.rootdata import (
    build,
    cartan_matrix,
    gram_matrix,
    highest_root,
    highest_short_root,
    weyl_group_order,
)

logger = logging.getLogger(__name__)

KacLike = Union[KacVector, Sequence]


class Side(str, Enum):
    POINTS = "points"    # F, node 0 is -xi
    WEIGHTS = "weights"  # F_Q, node 0 is -(highest short root)


def _candidates(k: int) -> List[Tuple[Family, int]]:
    types = [(Family.A, k)]
    if k >= 2:
        types.append((Family.B, k))
    if k >= 3:
        types.append((Family.C, k))
    if k >= 4:
        types.append((Family.D, k))
    if k in (6, 7, 8):
        types.append((Family.E, k))
    if k == 4:
        types.append((Family.F, 4))
    if k == 2:
        types.append((Family.G, 2))
    return types


def _profile(matrix, i: int) -> Tuple:
    k = len(matrix)
    row = sorted(matrix[i][j] for j in range(k) if j != i)
    col = sorted(matrix[j][i] for j in range(k) if j != i)
    return tuple(row), tuple(col)


def is_isomorphic(a, b) -> bool:
    """Equality of Cartan matrices up to simultaneous row/column permutation"""
    k = len(a)
    if k != len(b):
        return False
    profiles_a = [_profile(a, i) for i in range(k)]
    profiles_b = [_profile(b, i) for i in range(k)]
    if sorted(profiles_a) != sorted(profiles_b):
        return False
    assignment = [-1] * k
    used = [False] * k

    def extend(i: int) -> bool:
        if i == k:
            return True
        for target in range(k):
            if used[target] or profiles_a[i] != profiles_b[target]:
                continue
            if all(
                a[i][j] == b[target][assignment[j]] and a[j][i] == b[assignment[j]][target]
                for j in range(i)
            ):
                assignment[i] = target
                used[target] = True
                if extend(i + 1):
                    return True
                used[target] = False
        return False

    return extend(0)


def classify_component(matrix) -> AlgebraType:
    k = len(matrix)
    for family, rank in _candidates(k):
        if is_isomorphic(matrix, cartan_matrix(family, rank)):
            return AlgebraType(family=family, rank=rank)
    raise RuntimeError(f"Unrecognized Dynkin component {matrix}")


def components(matrix) -> List[List[int]]:
    k = len(matrix)
    remaining = set(range(k))
    parts = []
    while remaining:
        start = min(remaining)
        stack, part = [start], {start}
        while stack:
            i = stack.pop()
            for j in range(k):
                if j not in part and (matrix[i][j] != 0 or matrix[j][i] != 0):
                    part.add(j)
                    stack.append(j)
        remaining -= part
        parts.append(sorted(part))
    return parts


def subdiagram_weyl_order(matrix) -> int:
    """Order of the Weyl group of a (possibly disconnected) finite-type Cartan matrix"""
    order = 1
    for part in components(matrix):
        sub = [[matrix[i][j] for j in part] for i in part]
        t = classify_component(sub)
        order *= weyl_group_order(t.family, t.rank)
    return order


@lru_cache(maxsize=None)
def extended_cartan(t: AlgebraType, side: Side) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix of {beta_0, alpha_1, ..., alpha_n}"""
    R = build(t)
    n = R.rank
    top = highest_root(R) if side == Side.POINTS else highest_short_root(R)
    roots = [tuple(-x for x in top)] + [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    gram = gram_matrix(R)

    def inner(x, y) -> Fraction:
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))

    rows = []
    for x in roots:
        row = []
        for y in roots:
            entry = 2 * inner(x, y) / inner(y, y)
            if entry.denominator != 1:
                raise RuntimeError(f"{t.label}: non-integral extended Cartan entry {entry}")
            row.append(int(entry))
        rows.append(tuple(row))
    extended = tuple(rows)
    if tuple(tuple(r[1:]) for r in extended[1:]) != R.cartan:
        raise RuntimeError(f"{t.label}: deleting node 0 does not recover the Cartan matrix")
    return extended


@lru_cache(maxsize=None)
def _stabilizer_order(t: AlgebraType, side: Side, zeros: FrozenSet[int]) -> int:
    extended = extended_cartan(t, side)
    index = sorted(zeros)
    sub = [[extended[i][j] for j in index] for i in index]
    return subdiagram_weyl_order(sub) if index else 1


def _entries(b: KacLike) -> Tuple[Fraction, ...]:
    if isinstance(b, KacVector):
        return b.entries
    return tuple(Fraction(x) for x in b)


def _checked(R: RootSystemData, b: KacLike, weights: Sequence[int], level=None) -> Tuple[Fraction, ...]:
    entries = _entries(b)
    if level is None:
        level = b.level if isinstance(b, KacVector) else sum(w * x for w, x in zip(weights, entries))
    KacVector(entries=entries, level=Fraction(level)).check(weights)
    return entries


def epsilon(R: RootSystemData, s: KacLike, level=None) -> int:
    """|W| divided by the order of Stab_{W^aff}(s) for s in F"""
    entries = _checked(R, s, R.point_weights, level)
    zeros = frozenset(i for i, x in enumerate(entries) if x == 0)
    return R.weyl_order // _stabilizer_order(R.algebra, Side.POINTS, zeros)


def dual_stab_order(R: RootSystemData, lam: KacLike, level=None) -> int:
    """Order of Stab_{W^aff_Q}(lambda/M) for lambda in M F_Q"""
    entries = _checked(R, lam, R.weight_weights, level)
    zeros = frozenset(i for i, x in enumerate(entries) if x == 0)
    return _stabilizer_order(R.algebra, Side.WEIGHTS, zeros)


def h_PM(R: RootSystemData, lam: KacLike, M: int) -> int:
    order = dual_stab_order(R, lam, M)
    return order * stabilizer_order(R.gamma_table, tuple(_entries(lam)))


def kac_of_point(R: RootSystemData, q: Sequence[int], M: int) -> Tuple[Fraction, ...]:
    """Kac coordinates at level M of s = (1/M) sum q_j alpha_j^vee: s_i = (C q)_i"""
    n = R.rank
    s = [sum(R.cartan[i][j] * Fraction(q[j]) for j in range(n)) for i in range(n)]
    return (M - sum(m * x for m, x in zip(R.marks, s)),) + tuple(s)


def point_of_kac(R: RootSystemData, s: Sequence) -> Tuple[Fraction, ...]:
    """Dual-root coordinates q = C^{-1} (s_1, ..., s_n)"""
    n = R.rank
    return tuple(sum(R.cartan_inv[i][j] * Fraction(s[j + 1]) for j in range(n)) for i in range(n))


def reduce_point(R: RootSystemData, q: Sequence[int], M: int) -> Tuple[KacVector, WeylElement, Tuple[int, ...]]:
    """
    Map s = q/M into F by affine reflections.

    Returns the Kac vector of the image (level 1), the Weyl element w and the
    coroot-lattice shift with w(image) + shift = s.
    """
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    n = R.rank
    C = np.array(R.cartan, dtype=object)
    marks = np.array(R.marks, dtype=object)
    long_length = max(R.lengths)
    xi_coroot = np.array([m * d // long_length for m, d in zip(R.marks, R.lengths)], dtype=object)

    y = np.array([Fraction(x, M) for x in q], dtype=object)
    # Translate into the fundamental parallelepiped of the coroot lattice
    floor = np.array([x.numerator // x.denominator for x in y], dtype=object)
    y = y - floor
    linear = np.eye(n, dtype=int).astype(object)
    inverse = np.eye(n, dtype=int).astype(object)
    shift = -floor

    while True:
        a = C.dot(y)
        kac = np.concatenate(([1 - marks.dot(a)], a))
        worst = min(range(n + 1), key=lambda i: (kac[i], i))
        if kac[worst] >= 0:
            break
        if worst == 0:
            reflection = np.eye(n, dtype=int).astype(object) - np.outer(xi_coroot, marks.dot(C))
            y = reflection.dot(y) + xi_coroot
            shift = reflection.dot(shift) + xi_coroot
        else:
            reflection = np.eye(n, dtype=int).astype(object)
            reflection[worst - 1, :] -= C[worst - 1, :]
            y = reflection.dot(y)
            shift = reflection.dot(shift)
        linear = reflection.dot(linear)
        inverse = inverse.dot(reflection)

    kac_vector = KacVector.build(tuple(kac), R.point_weights)
    w = WeylElement(matrix=tuple(tuple(int(x) for x in row) for row in linear.T))
    record = tuple(int(x) for x in -inverse.dot(shift))
    return kac_vector, w, record


# Brute-force oracles on the finite torus, used by verification and tests.

def brute_force_epsilon(matrices: np.ndarray, q: Sequence[int], M: int) -> int:
    """Size of the W-orbit of q in (1/M)Q^vee / Q^vee"""
    images = np.einsum("wji,j->wi", matrices, np.asarray(q, dtype=np.int64)) % M
    return len({tuple(row) for row in images})


def brute_force_h(matrices: np.ndarray, lam: Sequence[int], M: int) -> int:
    """#{w : w lambda = lambda mod M P}, the order of Stab_{W^aff_P}(lambda/M)"""
    lam = np.asarray(lam, dtype=np.int64)
    images = np.einsum("wij,j->wi", matrices, lam)
    return int(np.sum(np.all((images - lam) % M == 0, axis=1)))


def brute_force_dual_stab(R: RootSystemData, matrices: np.ndarray, lam: Sequence[int], M: int) -> int:
    """#{w : lambda - w lambda in M Q}"""
    lam = np.asarray(lam, dtype=np.int64)
    n = R.rank
    det = R.connection_index
    # det * C^{-T} is integral
    adj_t = np.array(
        [[int(R.cartan_inv[j][i] * det) for j in range(n)] for i in range(n)], dtype=np.int64
    )
    count = 0
    for matrix in matrices:
        diff = lam - matrix.dot(lam)
        root_coords = adj_t.dot(diff)
        if np.all(root_coords % (det * M) == 0):
            count += 1
    return count
