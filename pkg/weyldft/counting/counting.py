"""
Cardinalities of the weight sets Lambda^sigma_{P,M}.

Three independent routes: the closed-form formulas per family, Burnside's
lemma over explicit fixed points of Gamma, and plain enumeration of the grids.
All arithmetic is exact; a rational intermediate that does not clear to an
integer is treated as a bug.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, List, Optional, Sequence, TextIO
import csv
import logging

from sympy import divisors, totient

from weyldft.config import get_settings
from weyldft.counting.models import CountQuery, SweepRow
from weyldft.errors import LevelTooSmall
from weyldft.grids.grids import kac_solutions, point_set, weight_set
from weyldft.lattice.gamma import act, sigma_on_stab, StabSign
from weyldft.lattice.models import AlgebraType, Family, RootSystemData, SignHom
from weyldft.lattice.rootdata import admissible_signs, build, check_sign, generalized_coxeter

logger = logging.getLogger(__name__)

# Coefficients of the E7 fixed-point polynomials, rows l = 0..5
E7_COEFFICIENTS = (
    (1, 34, 64, 9),
    (2, 46, 55, 5),
    (5, 55, 46, 2),
    (9, 64, 34, 1),
    (16, 67, 25, 0),
    (25, 67, 16, 0),
)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n"""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _exact(value: Fraction, where: str) -> int:
    if value.denominator != 1:
        raise RuntimeError(f"Counting formula for {where} produced non-integer {value}")
    return int(value)


def denumerant(R: RootSystemData, M: int) -> int:
    """Number of nonnegative solutions of lambda_0 + sum m^v_i lambda_i = M"""
    if M < 0:
        return 0
    ways = [1] + [0] * M
    for coin in R.weight_weights:
        for total in range(coin, M + 1):
            ways[total] += ways[total - coin]
    return ways[M]


def _type_a(n: int, sigma: SignHom, M: int) -> Fraction:
    g = gcd(n + 1, M)
    if sigma == SignHom.IDENTITY:
        total = sum(totient(d) * binom((n + M + 1) // d, (n + 1) // d) for d in divisors(g))
        return Fraction(int(total), n + M + 1)
    total = sum((-1) ** ((n + 1) // d) * totient(d) * binom(M // d, (n + 1) // d) for d in divisors(g))
    return Fraction((-1) ** (n + 1) * int(total), M)


def _type_b(n: int, sigma: SignHom, M: int) -> Fraction:
    if sigma == SignHom.IDENTITY:
        if M % 2 == 1:
            return Fraction(binom(n + M // 2, n))
        k, l = M // 4, (M % 4) // 2
        m = n // 2
        if n % 2 == 1:
            return Fraction(
                binom(2 * m + 2 * k + l + 1, 2 * m + 1) + binom(2 * m + 2 * k + l, 2 * m + 1) + binom(m + k, m), 2
            )
        return Fraction(
            binom(2 * m + 2 * k + l, 2 * m) + binom(2 * m + 2 * k + l - 1, 2 * m)
            + binom(m + k, m) + binom(m + k + l - 1, m),
            2,
        )

    even = M % 2 == 0
    k, l = M // 4, (M % 4) // 2
    if sigma == SignHom.DET:
        m = n // 4
        if even and n % 4 == 1:
            return Fraction(binom(2 * k + l, 4 * m + 1) + binom(2 * k + l - 1, 4 * m + 1) - binom(k + l - 1, 2 * m), 2)
        if even and n % 4 == 2:
            return Fraction(
                binom(2 * k + l, 4 * m + 2) + binom(2 * k + l - 1, 4 * m + 2)
                - binom(k, 2 * m + 1) - binom(k + l - 1, 2 * m + 1),
                2,
            )
        return _type_b(n, SignHom.IDENTITY, M - 2 * n)
    if sigma == SignHom.SHORT:
        m = n // 2
        if even and n % 2 == 1:
            return Fraction(
                binom(2 * m + 2 * k + l, 2 * m + 1) + binom(2 * m + 2 * k + l - 1, 2 * m + 1) - binom(m + k + l - 1, m),
                2,
            )
        return _type_b(n, SignHom.IDENTITY, M - 2)
    m = n // 4
    if even and n % 4 == 2:
        return Fraction(
            binom(2 * k + l + 1, 4 * m + 2) + binom(2 * k + l, 4 * m + 2)
            - binom(k, 2 * m + 1) - binom(k + l, 2 * m + 1),
            2,
        )
    if even and n % 4 == 3:
        return Fraction(binom(2 * k + l + 1, 4 * m + 3) + binom(2 * k + l, 4 * m + 3) - binom(k, 2 * m + 1), 2)
    return _type_b(n, SignHom.IDENTITY, M - 2 * n + 2)


def _type_c(n: int, sigma: SignHom, M: int) -> Fraction:
    shift = {
        SignHom.IDENTITY: 0,
        SignHom.DET: 2 * n + 1,
        SignHom.SHORT: 2 * n - 2,
        SignHom.LONG: 3,
    }[sigma]
    level = M - shift
    if level < 0:
        return Fraction(0)
    return Fraction(binom(n + level // 2, n))


def _type_d(n: int, sigma: SignHom, M: int) -> Fraction:
    if sigma == SignHom.IDENTITY:
        if M % 2 == 1:
            k = M // 2
            return Fraction(binom(n + k, n) + binom(n + k - 1, n))
        m = n // 2
        if M % 4 == 0:
            k = M // 4
            if n % 2 == 1:
                return Fraction(
                    binom(2 * m + 2 * k + 1, 2 * m + 1) + 6 * binom(2 * m + 2 * k, 2 * m + 1)
                    + binom(2 * m - 1 + 2 * k, 2 * m + 1) + binom(2 * m - 1 + 2 * k, 2 * m - 1)
                    + 2 * binom(m + k - 1, m - 1),
                    4,
                )
            return Fraction(
                binom(2 * m + 2 * k, 2 * m) + 6 * binom(2 * m + 2 * k - 1, 2 * m)
                + binom(2 * m + 2 * k - 2, 2 * m) + binom(2 * m + 2 * k - 2, 2 * m - 2)
                + 2 * binom(m + k, m) + 6 * binom(m + k - 1, m),
                4,
            )
        k = (M - 2) // 4
        if n % 2 == 1:
            return Fraction(
                binom(2 * m + 2 * k + 2, 2 * m + 1) + 6 * binom(2 * m + 2 * k + 1, 2 * m + 1)
                + binom(2 * m + 2 * k, 2 * m + 1) + binom(2 * m + 2 * k, 2 * m - 1),
                4,
            )
        return Fraction(
            binom(2 * m + 2 * k + 1, 2 * m) + 6 * binom(2 * m + 2 * k, 2 * m)
            + binom(2 * m + 2 * k - 1, 2 * m) + binom(2 * m + 2 * k - 1, 2 * m - 2)
            + 6 * binom(m + k, m) + 2 * binom(m + k - 1, m),
            4,
        )

    m = n // 4
    if M % 4 == 0 and n % 4 == 3:
        k = M // 4
        return Fraction(
            binom(2 * k + 1, 4 * m + 3) + 6 * binom(2 * k, 4 * m + 3) + binom(2 * k - 1, 4 * m + 3)
            + binom(2 * k - 1, 4 * m + 1) - 2 * binom(k - 1, 2 * m),
            4,
        )
    if M % 4 == 2 and n % 4 == 2:
        k = (M - 2) // 4
        return Fraction(
            binom(2 * k + 2, 4 * m + 2) + 6 * binom(2 * k + 1, 4 * m + 2) + binom(2 * k, 4 * m + 2)
            + binom(2 * k, 4 * m) - 2 * binom(k + 1, 2 * m + 1) - 6 * binom(k, 2 * m + 1),
            4,
        )
    if M % 4 == 0 and n % 4 == 2:
        k = M // 4
        return Fraction(
            binom(2 * k + 1, 4 * m + 2) + 6 * binom(2 * k, 4 * m + 2) + binom(2 * k - 1, 4 * m + 2)
            + binom(2 * k - 1, 4 * m) - 6 * binom(k, 2 * m + 1) - 2 * binom(k - 1, 2 * m + 1),
            4,
        )
    return _type_d(n, SignHom.IDENTITY, M - 2 * n + 2)


def _type_e6(R: RootSystemData, sigma: SignHom, M: int) -> Fraction:
    if sigma == SignHom.DET:
        return _type_e6(R, SignHom.IDENTITY, M - 12)
    k = M // 6
    if M % 6 == 0:
        return Fraction(denumerant(R, M) + 2 * binom(k + 2, 2) + 2 * binom(k + 1, 2), 3)
    if M % 6 == 3:
        return Fraction(denumerant(R, M) + 4 * binom(k + 2, 2), 3)
    return Fraction(denumerant(R, M), 3)


def _type_e7(R: RootSystemData, sigma: SignHom, M: int) -> Fraction:
    if sigma == SignHom.IDENTITY:
        if M % 2 == 1:
            return Fraction(denumerant(R, M), 2)
        k, l = M // 12, (M % 12) // 2
        fixed = sum(E7_COEFFICIENTS[l][i] * binom(4 - i + k, 4) for i in range(4))
        return Fraction(denumerant(R, M) + fixed, 2)
    if M % 2 == 1:
        return _type_e7(R, SignHom.IDENTITY, M - 18)
    k, l = M // 12, (M % 12) // 2
    if l <= 2:
        fixed = sum(E7_COEFFICIENTS[l + 3][i] * binom(2 - i + k, 4) for i in range(4))
    else:
        fixed = sum(E7_COEFFICIENTS[l - 3][i] * binom(3 - i + k, 4) for i in range(4))
    return Fraction(denumerant(R, M - 18) - fixed, 2)


def closed_form(query: CountQuery) -> int:
    R = build(query.algebra)
    sigma, M = query.sigma, query.M
    check_sign(R, sigma)
    bound = generalized_coxeter(R, sigma)
    if M <= bound:
        raise LevelTooSmall(M, bound)
    n = R.rank
    family = R.algebra.family
    if family == Family.A:
        value = _type_a(n, sigma, M)
    elif family == Family.B:
        value = _type_b(n, sigma, M)
    elif family == Family.C:
        value = _type_c(n, sigma, M)
    elif family == Family.D:
        value = _type_d(n, sigma, M)
    elif family == Family.E and n == 6:
        value = _type_e6(R, sigma, M)
    elif family == Family.E and n == 7:
        value = _type_e7(R, sigma, M)
    else:
        # Gamma is trivial: count Lambda^sigma_{Q,M} through the rho shift
        value = Fraction(denumerant(R, M - bound))
    return _exact(value, f"{R.label} sigma={sigma.short_name} M={M}")


def burnside_count(R: RootSystemData, sigma: SignHom, M: int) -> int:
    """Orbit count of Gamma on Lambda_{M - m^sigma}, minus orbits with a negative stabilizer sign"""
    check_sign(R, sigma)
    bound = generalized_coxeter(R, sigma)
    if M <= bound:
        raise LevelTooSmall(M, bound)
    level = M - bound
    group = R.gamma_table
    fixed = [0] * len(group)
    fixed_negative = [0] * len(group)
    for lam in kac_solutions(R.weight_weights, level, (0,) * (R.rank + 1)):
        negative = sigma_on_stab(group, sigma, lam) == StabSign.CONTAINS_MINUS
        for index, gamma in enumerate(group):
            if act(gamma, lam) == lam:
                fixed[index] += 1
                if negative:
                    fixed_negative[index] += 1
    c = R.connection_index
    where = f"{R.label} sigma={sigma.short_name} M={M}"
    orbits = _exact(Fraction(sum(fixed), c), where)
    negative_orbits = _exact(Fraction(sum(fixed_negative), c), where)
    logger.debug(f"Burnside {where}: fixed={fixed}, negative={fixed_negative}")
    return orbits - negative_orbits


def necklace_crosscheck(n: int, M: int) -> int:
    """Necklaces of n+1 white and M black beads, by Burnside over all rotations"""
    if n < 1 or M < 1:
        raise ValueError(f"n and M must be positive, got n={n}, M={M}")
    size = n + M + 1
    total = 0
    for shift in range(size):
        cycles = gcd(shift, size)
        cycle_length = size // cycles
        if (n + 1) % cycle_length == 0:
            total += binom(cycles, (n + 1) // cycle_length)
    return _exact(Fraction(total, size), f"necklace n={n} M={M}")


def expand_queries(algebras: Iterable[AlgebraType], sigmas: Optional[Sequence[SignHom]] = None,
                   span: int = 10) -> List[CountQuery]:
    """Queries with M in (m^sigma, m^sigma + span] for every admissible sigma"""
    queries = []
    for algebra in algebras:
        R = build(algebra)
        for sigma in admissible_signs(R):
            if sigmas is not None and sigma not in sigmas:
                continue
            bound = generalized_coxeter(R, sigma)
            queries.extend(CountQuery(algebra=algebra, sigma=sigma, M=M) for M in range(bound + 1, bound + span + 1))
    return queries


def evaluate(query: CountQuery) -> SweepRow:
    R = build(query.algebra)
    return SweepRow(
        algebra=R.label,
        sigma=query.sigma.short_name,
        M=query.M,
        closed_form=closed_form(query),
        burnside=burnside_count(R, query.sigma, query.M),
        enum_points=len(point_set(R, query.sigma, query.M)),
        enum_weights=len(weight_set(R, query.sigma, query.M)),
    )


def sweep(queries: Sequence[CountQuery], threads: Optional[int] = None) -> List[SweepRow]:
    threads = get_settings().threads if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(evaluate, queries))
    else:
        rows = [evaluate(q) for q in queries]
    disagreements = [row for row in rows if not row.agree]
    for row in disagreements:
        logger.error(f"Count disagreement for {row.algebra} sigma={row.sigma} M={row.M}: {row.model_dump()}")
    logger.info(f"Counting sweep: {len(rows)} queries, {len(disagreements)} disagreements")
    return rows


SWEEP_COLUMNS = ["algebra", "sigma", "M", "closed_form", "burnside", "enum_points", "enum_weights", "agree"]


def write_sweep_csv(rows: Sequence[SweepRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([
            row.algebra, row.sigma, row.M, row.closed_form, row.burnside,
            row.enum_points, row.enum_weights, str(row.agree).lower(),
        ])
