"""
The abelian group Gamma acting on Kac coordinates by permutations.

Each generator row gives the permuted coordinate list: position i of the
image holds entry perm[i] of the input. Signs of non-generator elements come
from extending the generator signs multiplicatively.
"""

from collections import deque
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from weyldft.lattice.models import AlgebraType, Family, GammaElement, RootSystemData, SignHom

logger = logging.getLogger(__name__)

Signs = Tuple[int, Optional[int], Optional[int]]


class StabSign(str, Enum):
    ALL_PLUS = "all_plus"
    CONTAINS_MINUS = "contains_minus"


def _reversal(n: int) -> Tuple[int, ...]:
    return tuple(n - i for i in range(n + 1))


def _d_rows(n: int) -> List[Tuple[str, Tuple[int, ...], Signs]]:
    k = n // 2
    middle = [n - i for i in range(2, n - 1)]
    swap = (1, 0) + tuple(range(2, n - 1)) + (n, n - 1)
    sign = (-1) ** k
    if n % 2 == 0:
        rows = [
            ("γ_1", swap, (1, None, None)),
            (f"γ_{n - 1}", tuple([n - 1, n] + middle + [0, 1]), (sign, None, None)),
            (f"γ_{n}", _reversal(n), (sign, None, None)),
        ]
    else:
        rows = [
            ("γ_1", swap, (1, None, None)),
            (f"γ_{n - 1}", tuple([n, n - 1] + middle + [0, 1]), (sign, None, None)),
            (f"γ_{n}", tuple([n - 1, n] + middle + [1, 0]), (sign, None, None)),
        ]
    return rows


def generator_rows(t: AlgebraType) -> List[Tuple[str, Tuple[int, ...], Signs]]:
    """Generator permutations and their (e, s, l) signs per family"""
    n = t.rank
    if t.family == Family.A:
        perm = tuple((j - 1) % (n + 1) for j in range(n + 1))
        return [("γ_1", perm, ((-1) ** n, None, None))]
    if t.family == Family.B:
        signs = ((-1) ** (n * (n + 1) // 2), (-1) ** n, (-1) ** (n * (n - 1) // 2))
        return [(f"γ_{n}", _reversal(n), signs)]
    if t.family == Family.C:
        return [("γ_1", (1, 0) + tuple(range(2, n + 1)), (-1, 1, -1))]
    if t.family == Family.D:
        return _d_rows(n)
    if t.family == Family.E and n == 6:
        return [
            ("γ_1", (1, 5, 4, 3, 6, 0, 2), (1, None, None)),
            ("γ_5", (5, 0, 6, 3, 2, 1, 4), (1, None, None)),
        ]
    if t.family == Family.E and n == 7:
        return [("γ_6", (6, 5, 4, 3, 2, 1, 0, 7), (-1, None, None))]
    return []


def _compose(p1: Sequence[int], p2: Sequence[int]) -> Tuple[int, ...]:
    """Permutation of act(g1, act(g2, b))"""
    return tuple(p2[p1[i]] for i in range(len(p1)))


def _multiply(a: Signs, b: Signs) -> Signs:
    return tuple(None if x is None else x * y for x, y in zip(a, b))


def build_gamma_table(t: AlgebraType, comarks: Sequence[int], simply_laced: bool) -> Tuple[GammaElement, ...]:
    """Close the generator rows under composition, extending signs as a homomorphism"""
    n = t.rank
    identity = tuple(range(n + 1))
    unit_signs: Signs = (1, None, None) if simply_laced else (1, 1, 1)
    rows = generator_rows(t)
    weights = (1,) + tuple(comarks)
    for label, perm, _ in rows:
        if sorted(perm) != list(identity) or any(weights[perm[i]] != weights[i] for i in range(n + 1)):
            raise RuntimeError(f"{t.label}: generator {label} does not preserve the comarks")

    found: Dict[Tuple[int, ...], Tuple[str, Signs]] = {identity: ("id", unit_signs)}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        current_label, current_signs = found[current]
        for label, perm, signs in rows:
            product = _compose(perm, current)
            product_signs = _multiply(signs, current_signs)
            if product in found:
                if found[product][1] != product_signs:
                    raise RuntimeError(f"{t.label}: sign extension is inconsistent at {product}")
                continue
            if t.family == Family.A:
                power = (product.index(0)) % (n + 1)
                product_label = f"γ_{power}"
            elif current == identity:
                product_label = label
            else:
                product_label = f"{label}·{current_label}"
            found[product] = (product_label, product_signs)
            queue.append(product)

    elements = []
    for perm, (label, signs) in found.items():
        # Any generator row reached by a longer product keeps its table label
        for row_label, row_perm, _ in rows:
            if row_perm == perm:
                label = row_label
        elements.append(GammaElement(perm=perm, label=label, sign_e=signs[0], sign_s=signs[1], sign_l=signs[2]))
    logger.debug(f"Gamma for {t.label} has {len(elements)} elements")
    return tuple(elements)


def gamma_group(R: RootSystemData) -> List[GammaElement]:
    return list(R.gamma_table)


def act(gamma: GammaElement, b: Sequence) -> Tuple:
    """Entry i of the result is entry perm[i] of b"""
    return tuple(b[gamma.perm[i]] for i in range(len(gamma.perm)))


def compose(g1: GammaElement, g2: GammaElement, group: Sequence[GammaElement]) -> GammaElement:
    """The element acting as g1 after g2"""
    perm = _compose(g1.perm, g2.perm)
    for element in group:
        if element.perm == perm:
            return element
    raise RuntimeError(f"Composition {g1.label}·{g2.label} left the group")


def orbit_and_stab(group: Sequence[GammaElement], b: Sequence) -> Tuple[List[Tuple], List[GammaElement]]:
    b = tuple(b)
    orbit = set()
    stab = []
    for gamma in group:
        image = act(gamma, b)
        orbit.add(image)
        if image == b:
            stab.append(gamma)
    return sorted(orbit, reverse=True), stab


def lex_max(group: Sequence[GammaElement], b: Sequence) -> Tuple:
    return max(act(gamma, tuple(b)) for gamma in group)


def is_lex_max(group: Sequence[GammaElement], b: Sequence) -> bool:
    b = tuple(b)
    return all(act(gamma, b) <= b for gamma in group)


def sigma_on_stab(group: Sequence[GammaElement], sigma: SignHom, b: Sequence) -> StabSign:
    b = tuple(b)
    for gamma in group:
        if act(gamma, b) == b and gamma.sign(sigma) == -1:
            return StabSign.CONTAINS_MINUS
    return StabSign.ALL_PLUS


def stabilizer_order(group: Sequence[GammaElement], b: Sequence) -> int:
    b = tuple(b)
    return sum(1 for gamma in group if act(gamma, b) == b)
