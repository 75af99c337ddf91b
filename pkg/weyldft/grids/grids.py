"""
Point sets F^sigma_{Q^vee,M} and weight sets Lambda^sigma_{P,M}.

Kac vectors at integer level are plain int tuples here; every list comes out
in descending lexicographic order.
"""

from functools import lru_cache
from typing import List, Sequence, Tuple
import logging

from weyldft.errors import LevelTooSmall
from weyldft.grids.models import GridPoint, GridWeight
from weyldft.lattice.affine import epsilon, h_PM
from weyldft.lattice.gamma import StabSign, is_lex_max, sigma_on_stab
from weyldft.lattice.models import AlgebraType, Family, RootSystemData, SignHom
from weyldft.lattice.rootdata import build, generalized_coxeter, point_pattern, rho_sigma

logger = logging.getLogger(__name__)

Kac = Tuple[int, ...]


def kac_solutions(weights: Sequence[int], level: int, lower: Sequence[int]) -> List[Kac]:
    """Nonnegative solutions of sum w_i b_i = level with b_i >= lower_i"""
    free = level - sum(w * b for w, b in zip(weights, lower))
    if free < 0:
        return []
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    found = []
    current = [0] * len(weights)

    def descend(position: int, remaining: int) -> None:
        index = order[position]
        weight = weights[index]
        if position == len(order) - 1:
            if remaining % weight == 0:
                current[index] = remaining // weight
                found.append(tuple(c + b for c, b in zip(current, lower)))
            return
        for value in range(remaining // weight + 1):
            current[index] = value
            descend(position + 1, remaining - value * weight)
        current[index] = 0

    descend(0, free)
    found.sort(reverse=True)
    return found


def within_hypothesis(R: RootSystemData, sigma: SignHom, M: int) -> bool:
    return M > generalized_coxeter(R, sigma)


def _require_level(R: RootSystemData, sigma: SignHom, M: int, relaxed: bool) -> None:
    bound = generalized_coxeter(R, sigma)
    if M < 1:
        raise LevelTooSmall(M, 0)
    if M <= bound:
        if not relaxed:
            raise LevelTooSmall(M, bound)
        logger.warning(f"{R.label} sigma={sigma.short_name} M={M} is outside M > m^sigma={bound}")


@lru_cache(maxsize=None)
def _adjugate(t: AlgebraType) -> Tuple[Tuple[int, ...], ...]:
    R = build(t)
    c = R.connection_index
    return tuple(tuple(int(x * c) for x in row) for row in R.cartan_inv)


def dual_root_coords(R: RootSystemData, s: Sequence[int]) -> Tuple[int, ...]:
    """q = C^{-1} (s_1..s_n); raises when s is off the dual root lattice"""
    adj = _adjugate(R.algebra)
    c = R.connection_index
    q = []
    for row in adj:
        value = sum(a * x for a, x in zip(row, s[1:]))
        if value % c:
            raise RuntimeError(f"{R.label}: Kac vector {tuple(s)} fails the congruence test")
        q.append(value // c)
    return tuple(q)


def congruence_general(R: RootSystemData, s: Sequence[int]) -> bool:
    """Integrality of C^{-1} (s_1, ..., s_n)"""
    c = R.connection_index
    return all(sum(a * x for a, x in zip(row, s[1:])) % c == 0 for row in _adjugate(R.algebra))


def _odd(s: Sequence[int], last: int) -> int:
    return sum(s[i] for i in range(1, last + 1, 2))


def congruence_simplified(R: RootSystemData, s: Sequence[int]) -> bool:
    """Per-family reduced form of the congruence test; s[i] is the i-th Kac coordinate"""
    n = R.rank
    family = R.algebra.family
    if family == Family.A:
        return sum(i * s[i] for i in range(1, n + 1)) % (n + 1) == 0
    if family == Family.B:
        if n % 2 == 1:
            return _odd(s, n) % 2 == 0
        return _odd(s, n - 1) % 2 == 0
    if family == Family.C:
        return s[n] % 2 == 0
    if family == Family.D:
        residue = n % 4
        if residue == 0:
            return _odd(s, n - 1) % 2 == 0 and (s[n - 1] + s[n]) % 2 == 0
        if residue == 1:
            return (2 * _odd(s, n - 2) + 3 * s[n - 1] + s[n]) % 4 == 0
        if residue == 2:
            return (_odd(s, n - 3) + s[n]) % 2 == 0 and (s[n - 1] + s[n]) % 2 == 0
        return (2 * _odd(s, n - 2) + s[n - 1] + 3 * s[n]) % 4 == 0
    if family == Family.E and n == 6:
        return (s[1] + 2 * s[2] + s[4] + 2 * s[5]) % 3 == 0
    if family == Family.E and n == 7:
        return (s[4] + s[6] + s[7]) % 2 == 0
    return True


def point_candidates(R: RootSystemData, sigma: SignHom, M: int) -> List[Kac]:
    """Solutions of sum m_i s_i = M with the sigma positivity pattern"""
    return kac_solutions(R.point_weights, M, point_pattern(R, sigma))


def dual_weight_point_set(R: RootSystemData, sigma: SignHom, M: int) -> List[Kac]:
    """Kac vectors of F^sigma_{P^vee,M}; no transform support"""
    return point_candidates(R, sigma, M)


def point_set(R: RootSystemData, sigma: SignHom, M: int, relaxed: bool = False) -> List[GridPoint]:
    _require_level(R, sigma, M, relaxed)
    points = []
    for s in point_candidates(R, sigma, M):
        if not congruence_simplified(R, s):
            continue
        points.append(GridPoint(kac=s, q=dual_root_coords(R, s), eps=epsilon(R, s, M), M=M))
    logger.info(f"F^{sigma.short_name}_(Q^v,{M}) of {R.label}: {len(points)} points")
    return points


def weight_superset(R: RootSystemData, sigma: SignHom, M: int) -> List[Kac]:
    """Lambda^sigma_{Q,M} = P intersected with M F_Q^sigma"""
    rho = tuple(int(x) for x in rho_sigma(R, sigma).entries)
    return kac_solutions(R.weight_weights, M, rho)


def weight_set(R: RootSystemData, sigma: SignHom, M: int, relaxed: bool = False) -> List[GridWeight]:
    _require_level(R, sigma, M, relaxed)
    group = R.gamma_table
    weights = [
        GridWeight(kac=lam, h=h_PM(R, lam, M), M=M)
        for lam in weight_superset(R, sigma, M)
        if is_lex_max(group, lam) and sigma_on_stab(group, sigma, lam) == StabSign.ALL_PLUS
    ]
    logger.info(f"Lambda^{sigma.short_name}_(P,{M}) of {R.label}: {len(weights)} weights")
    return weights


def tilde_sets(R: RootSystemData, sigma: SignHom, M: int) -> Tuple[List[Kac], List[Kac]]:
    """Split the lex-max representatives of Lambda_M by the signs of their stabilizers"""
    group = R.gamma_table
    plus, minus = [], []
    for lam in weight_superset(R, SignHom.IDENTITY, M):
        if not is_lex_max(group, lam):
            continue
        if sigma_on_stab(group, sigma, lam) == StabSign.ALL_PLUS:
            plus.append(lam)
        else:
            minus.append(lam)
    return plus, minus


def rho_shift(R: RootSystemData, sigma: SignHom, lams: Sequence[Kac]) -> List[Kac]:
    rho = tuple(int(x) for x in rho_sigma(R, sigma).entries)
    return [tuple(a + b for a, b in zip(lam, rho)) for lam in lams]


def boundary_weights(R: RootSystemData, sigma: SignHom, M: int) -> List[Kac]:
    """Lex-max weights of P in M F_Q outside Lambda^sigma_{P,M}, i.e. labels in M(F_P minus F_P^sigma)"""
    inside = {w.kac for w in weight_set(R, sigma, M, relaxed=True)}
    group = R.gamma_table
    return [
        lam for lam in weight_superset(R, SignHom.IDENTITY, M)
        if is_lex_max(group, lam) and lam not in inside
    ]
