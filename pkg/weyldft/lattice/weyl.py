from collections import deque
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from weyldft.config import get_settings
from weyldft.errors import GroupTooLarge
from weyldft.lattice.models import AlgebraType, RootSystemData, SignHom, Weight, WeylElement
from weyldft.lattice.rootdata import build, check_sign

logger = logging.getLogger(__name__)


def reflect_weight(R: RootSystemData, i: int, weight: Weight) -> Weight:
    """(r_i lambda)_j = lambda_j - lambda_i C_ij, generators numbered from 1"""
    if not 1 <= i <= R.rank:
        raise ValueError(f"Generator index {i} out of range 1..{R.rank}")
    lam = weight.coords
    row = R.cartan[i - 1]
    return Weight(coords=tuple(lam[j] - lam[i - 1] * row[j] for j in range(R.rank)))


def generator_matrix(R: RootSystemData, i: int) -> np.ndarray:
    n = R.rank
    matrix = np.eye(n, dtype=np.int64)
    matrix[:, i - 1] -= np.array(R.cartan[i - 1], dtype=np.int64)
    return matrix


def _as_tuple(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


@lru_cache(maxsize=None)
def _weyl_matrices(t: AlgebraType) -> np.ndarray:
    """All elements as a (|W|, n, n) array in BFS-layer then lexicographic order"""
    R = build(t)
    n = R.rank
    generators = [generator_matrix(R, i) for i in range(1, n + 1)]
    identity = np.eye(n, dtype=np.int64)
    seen = {identity.tobytes()}
    layer = [identity]
    ordered = [identity]
    while layer:
        following = {}
        for matrix in layer:
            for gen in generators:
                product = gen @ matrix
                key = product.tobytes()
                if key not in seen:
                    seen.add(key)
                    following[key] = product
        layer = sorted(following.values(), key=lambda m: tuple(m.flatten()))
        ordered.extend(layer)
    stacked = np.stack(ordered)
    stacked.setflags(write=False)
    return stacked


def weyl_matrices(R: RootSystemData, cap: Optional[int] = None) -> np.ndarray:
    cap = get_settings().weyl_cap if cap is None else cap
    if R.weyl_order > cap:
        raise GroupTooLarge(R.weyl_order, cap)
    matrices = _weyl_matrices(R.algebra)
    if len(matrices) != R.weyl_order:
        raise RuntimeError(f"{R.label}: enumerated {len(matrices)} elements, expected {R.weyl_order}")
    return matrices


def enumerate_weyl(R: RootSystemData, cap: Optional[int] = None) -> List[WeylElement]:
    matrices = weyl_matrices(R, cap)
    logger.info(f"Enumerated Weyl group of {R.label}: {len(matrices)} elements")
    return [WeylElement(matrix=_as_tuple(m)) for m in matrices]


def factorize(R: RootSystemData, w: WeylElement) -> Tuple[int, ...]:
    """Reduced word by descent: strip r_i while (w rho)_i < 0"""
    n = R.rank
    v = list(w.apply((1,) * n))
    word = []
    while True:
        descent = next((i for i in range(n) if v[i] < 0), None)
        if descent is None:
            break
        row = R.cartan[descent]
        v = [v[j] - v[descent] * row[j] for j in range(n)]
        word.append(descent + 1)
    if v != [1] * n:
        raise RuntimeError(f"Descent of {w.matrix} did not reach rho")
    return tuple(word)


def with_word(R: RootSystemData, w: WeylElement) -> WeylElement:
    if w.word is not None:
        return w
    return WeylElement(matrix=w.matrix, word=factorize(R, w))


def word_sign(R: RootSystemData, sigma: SignHom, word: Sequence[int]) -> int:
    """Product of generator signs: short/long letters flip sigma^s/sigma^l"""
    check_sign(R, sigma)
    if sigma == SignHom.IDENTITY:
        return 1
    if sigma == SignHom.DET:
        return (-1) ** len(word)
    letters = R.short_set if sigma == SignHom.SHORT else R.long_set
    return (-1) ** sum(1 for i in word if i in letters)


def sign_value(R: RootSystemData, sigma: SignHom, w: WeylElement) -> int:
    check_sign(R, sigma)
    if sigma == SignHom.IDENTITY:
        return 1
    if sigma == SignHom.DET:
        return int(round(np.linalg.det(np.array(w.matrix, dtype=float))))
    word = w.word if w.word is not None else factorize(R, w)
    return word_sign(R, sigma, word)


@lru_cache(maxsize=None)
def _signs(t: AlgebraType, sigma: SignHom) -> np.ndarray:
    R = build(t)
    matrices = _weyl_matrices(t)
    values = np.array(
        [sign_value(R, sigma, WeylElement(matrix=_as_tuple(m))) for m in matrices], dtype=np.int64
    )
    values.setflags(write=False)
    return values


def weyl_signs(R: RootSystemData, sigma: SignHom, cap: Optional[int] = None) -> np.ndarray:
    """sigma(w) aligned with weyl_matrices"""
    weyl_matrices(R, cap)
    return _signs(R.algebra, sigma)


def longest_element(R: RootSystemData, cap: Optional[int] = None) -> WeylElement:
    matrices = weyl_matrices(R, cap)
    return with_word(R, WeylElement(matrix=_as_tuple(matrices[-1])))
