from itertools import product
from typing import Callable, Dict, List
import logging

import numpy as np

from weyldft.counting.counting import burnside_count, closed_form
from weyldft.counting.models import CountQuery
from weyldft.grids.grids import (
    congruence_general,
    congruence_simplified,
    point_candidates,
    point_set,
    rho_shift,
    tilde_sets,
    weight_set,
    weight_superset,
)
from weyldft.lattice.affine import brute_force_dual_stab, brute_force_epsilon, brute_force_h, dual_stab_order, h_PM
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import generalized_coxeter
from weyldft.lattice.weyl import weyl_matrices
from weyldft.transforms.models import SampleTable
from weyldft.transforms.transforms import (
    boundary_vanishing,
    exponential_sum,
    forward,
    get_transform,
    hartley_forward,
    plancherel_gap,
    roundtrip_error,
)
from weyldft.verify.models import CheckResult, VerifyContext

logger = logging.getLogger(__name__)

Check = Callable[[VerifyContext], CheckResult]

GRAM_TOLERANCE = 1e-9
PLANCHEREL_TOLERANCE = 1e-9
ROUNDTRIP_TOLERANCE = 1e-10


class CheckRegistry:
    """Registry of named verification checks"""

    def __init__(self):
        self.checks: Dict[str, Check] = {}
        self._register_default_checks()

    def register(self, name: str, check: Check) -> None:
        self.checks[name] = check

    def get(self, name: str) -> Check:
        if name not in self.checks:
            raise ValueError(f"Check '{name}' not found")
        return self.checks[name]

    def list_checks(self) -> List[str]:
        return list(self.checks.keys())

    def _register_default_checks(self):
        self.register("torus_partition", torus_partition)
        self.register("congruence_equivalence", congruence_equivalence)
        self.register("rho_shift", rho_shift_identity)
        self.register("cardinality", cardinality)
        self.register("gram_diagonal", gram_diagonal)
        self.register("hartley_gram", hartley_gram)
        self.register("plancherel", plancherel)
        self.register("roundtrip", roundtrip)
        self.register("boundary_vanishing", boundary_zeros)
        self.register("lambda_p_equals_q", lambda_p_equals_q)
        self.register("stabilizer_oracle", stabilizer_oracle)
        self.register("exponential_orthogonality", exponential_orthogonality)


def _random_samples(context: VerifyContext, real: bool) -> List[SampleTable]:
    transform = get_transform(context.R, context.sigma, context.M, allow_large=context.allow_large)
    rng = np.random.default_rng(context.seed)
    size = len(transform.points)
    tables = []
    for _ in range(context.samples):
        values = rng.integers(-50, 51, size) / rng.integers(1, 10)
        if not real:
            values = values + 1j * rng.integers(-50, 51, size) / rng.integers(1, 10)
        tables.append(transform.table(values))
    return tables


def torus_partition(context: VerifyContext) -> CheckResult:
    """sum of epsilon over F intersected with (1/M)Q^vee equals M^n"""
    R, M = context.R, context.M
    points = point_set(R, SignHom.IDENTITY, M, relaxed=True)
    total = sum(p.eps + context.eps_offset for p in points)
    expected = M**R.rank
    return CheckResult(
        passed=total == expected,
        deviation=float(abs(total - expected)),
        message=f"sum eps = {total}, M^n = {expected}",
    )


def congruence_equivalence(context: VerifyContext) -> CheckResult:
    candidates = point_candidates(context.R, SignHom.IDENTITY, context.M)
    mismatched = [s for s in candidates if congruence_general(context.R, s) != congruence_simplified(context.R, s)]
    return CheckResult(
        passed=not mismatched,
        deviation=float(len(mismatched)),
        message=f"{len(candidates)} candidates, {len(mismatched)} disagree" + (f", first {mismatched[0]}" if mismatched else ""),
    )


def rho_shift_identity(context: VerifyContext) -> CheckResult:
    """Lambda^sigma_{P,M+m^sigma} = rho^sigma + tilde Lambda_M"""
    R, sigma, M = context.R, context.sigma, context.M
    bound = generalized_coxeter(R, sigma)
    shifted = sorted(rho_shift(R, sigma, tilde_sets(R, sigma, M)[0]), reverse=True)
    direct = [w.kac for w in weight_set(R, sigma, M + bound)]
    difference = set(shifted) ^ set(direct)
    return CheckResult(
        passed=shifted == direct,
        deviation=float(len(difference)),
        message=f"level {M + bound}: {len(direct)} weights, {len(shifted)} shifted, {len(difference)} differ",
    )


def cardinality(context: VerifyContext) -> CheckResult:
    R, sigma, M = context.R, context.sigma, context.M
    counts = {
        "points": len(point_set(R, sigma, M)),
        "weights": len(weight_set(R, sigma, M)),
        "closed_form": closed_form(CountQuery(algebra=R.algebra, sigma=sigma, M=M)),
        "burnside": burnside_count(R, sigma, M),
    }
    values = list(counts.values())
    return CheckResult(
        passed=len(set(values)) == 1,
        deviation=float(max(values) - min(values)),
        message=", ".join(f"{name}={value}" for name, value in counts.items()),
    )


def _gram(context: VerifyContext, hartley: bool) -> CheckResult:
    transform = get_transform(context.R, context.sigma, context.M, allow_large=context.allow_large)
    matrix = transform.evaluation_matrix(hartley)
    weighted = matrix * transform.eps
    gram = weighted.dot(matrix.T if hartley else np.conj(matrix).T)
    expected = np.diag(transform.norm * transform.h)
    deviation = float(np.max(np.abs(gram - expected), initial=0.0)) / transform.norm
    return CheckResult(
        passed=bool(deviation <= GRAM_TOLERANCE),
        deviation=deviation,
        message=f"{len(matrix)}x{len(matrix)} Gram matrix, max relative deviation {deviation:.3e}",
    )


def gram_diagonal(context: VerifyContext) -> CheckResult:
    return _gram(context, hartley=False)


def hartley_gram(context: VerifyContext) -> CheckResult:
    return _gram(context, hartley=True)


def plancherel(context: VerifyContext) -> CheckResult:
    R, sigma, M = context.R, context.sigma, context.M
    gaps = []
    for f in _random_samples(context, real=False):
        gaps.append(plancherel_gap(R, sigma, M, f, forward(R, sigma, M, f, context.allow_large)))
    for f in _random_samples(context, real=True):
        gaps.append(plancherel_gap(R, sigma, M, f, hartley_forward(R, sigma, M, f, context.allow_large)))
    worst = max(gaps, default=0.0)
    return CheckResult(
        passed=bool(worst <= PLANCHEREL_TOLERANCE),
        deviation=worst,
        message=f"{len(gaps)} random inputs, worst relative gap {worst:.3e}",
    )


def roundtrip(context: VerifyContext) -> CheckResult:
    R, sigma, M = context.R, context.sigma, context.M
    errors = [roundtrip_error(R, sigma, M, f, False, context.allow_large) for f in _random_samples(context, real=False)]
    errors += [roundtrip_error(R, sigma, M, f, True, context.allow_large) for f in _random_samples(context, real=True)]
    worst = max(errors, default=0.0)
    return CheckResult(
        passed=bool(worst <= ROUNDTRIP_TOLERANCE),
        deviation=worst,
        message=f"{len(errors)} round trips, worst relative error {worst:.3e}",
    )


def boundary_zeros(context: VerifyContext) -> CheckResult:
    """phi^sigma vanishes on labels in M(F_P minus F_P^sigma)"""
    nonzero = boundary_vanishing(context.R, context.sigma, context.M, context.allow_large)
    return CheckResult(
        passed=not nonzero,
        deviation=float(len(nonzero)),
        message=f"{len(nonzero)} boundary labels with nonvanishing phi" + (f", first {nonzero[0]}" if nonzero else ""),
    )


def lambda_p_equals_q(context: VerifyContext) -> CheckResult:
    """With trivial Gamma the P and Q label sets and their h coefficients coincide"""
    R, sigma, M = context.R, context.sigma, context.M
    if R.connection_index != 1:
        return CheckResult(passed=True, message=f"{R.label} has nontrivial Gamma, nothing to compare")
    weights = weight_set(R, sigma, M)
    superset = weight_superset(R, sigma, M)
    mismatched = [w.kac for w in weights if w.h != dual_stab_order(R, w.kac, M)]
    passed = [w.kac for w in weights] == superset and not mismatched
    return CheckResult(
        passed=passed,
        deviation=float(abs(len(weights) - len(superset)) + len(mismatched)),
        message=f"|Lambda_P|={len(weights)}, |Lambda_Q|={len(superset)}",
    )


def stabilizer_oracle(context: VerifyContext) -> CheckResult:
    """epsilon and h from subdiagrams against brute-force orbit counts on the torus"""
    R, M = context.R, context.M
    if R.rank > 3 or M > 6:
        return CheckResult(passed=True, skipped=True, message="brute force limited to rank <= 3 and M <= 6")
    matrices = weyl_matrices(R)
    mismatched = []
    for p in point_set(R, SignHom.IDENTITY, M, relaxed=True):
        if p.eps != brute_force_epsilon(matrices, p.q, M):
            mismatched.append(p.kac)
    weights = weight_superset(R, SignHom.IDENTITY, M)
    for lam in weights:
        coords = lam[1:]
        if h_PM(R, lam, M) != brute_force_h(matrices, coords, M):
            mismatched.append(lam)
        elif dual_stab_order(R, lam, M) != brute_force_dual_stab(R, matrices, coords, M):
            mismatched.append(lam)
    return CheckResult(
        passed=not mismatched,
        deviation=float(len(mismatched)),
        message=f"{len(weights)} weights checked, {len(mismatched)} mismatches" + (f", first {mismatched[0]}" if mismatched else ""),
    )


def exponential_orthogonality(context: VerifyContext) -> CheckResult:
    """sum_y exp(2 pi i <mu, y>) is M^n for mu in MP and 0 otherwise"""
    R, M = context.R, context.M
    if R.rank > 2 or M > 12:
        return CheckResult(passed=True, skipped=True, message="direct summation limited to rank <= 2 and M <= 12")
    expected_full = float(M**R.rank)
    worst = 0.0
    for mu in product(range(M + 1), repeat=R.rank):
        expected = expected_full if all(x % M == 0 for x in mu) else 0.0
        worst = max(worst, abs(exponential_sum(R, mu, M) - expected) / expected_full)
    return CheckResult(
        passed=bool(worst <= GRAM_TOLERANCE),
        deviation=worst,
        message=f"{(M + 1) ** R.rank} labels, worst relative deviation {worst:.3e}",
    )
