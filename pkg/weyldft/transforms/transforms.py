"""
Weyl and Hartley orbit functions on the dual-root grid and the transforms built on them.

Every phase <w lambda, s> is the integer (w lambda) . q reduced mod M, so orbit
sums only ever index a table of the M-th roots of unity.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from weyldft.config import get_settings
from weyldft.errors import GridMismatch
from weyldft.grids.grids import boundary_weights, point_set, weight_set
from weyldft.grids.models import GridPoint, GridWeight
from weyldft.lattice.models import AlgebraType, RootSystemData, SignHom, WeylElement
from weyldft.lattice.rootdata import build, check_sign
from weyldft.lattice.weyl import sign_value, weyl_matrices, weyl_signs
from weyldft.transforms.models import PhaseFraction, SampleTable, Spectrum

logger = logging.getLogger(__name__)


def _cap(R: RootSystemData, allow_large: bool) -> Optional[int]:
    return max(R.weyl_order, get_settings().weyl_cap) if allow_large else None


class WeylTransform:
    """Grid, labels, Weyl group and root-of-unity table for one (algebra, sigma, M)"""

    def __init__(self, R: RootSystemData, sigma: SignHom, M: int, relaxed: bool = False,
                 allow_large: bool = False):
        check_sign(R, sigma)
        self.R = R
        self.sigma = sigma
        self.M = M
        cap = _cap(R, allow_large)
        self.matrices = weyl_matrices(R, cap)
        self.signs = weyl_signs(R, sigma, cap).astype(float)
        self.points = point_set(R, sigma, M, relaxed)
        self.weights = weight_set(R, sigma, M, relaxed)
        self.q = np.array([p.q for p in self.points], dtype=np.int64).reshape(len(self.points), R.rank)
        self.eps = np.array([p.eps for p in self.points], dtype=float)
        self.h = np.array([w.h for w in self.weights], dtype=float)
        self.roots = np.exp(2j * np.pi * np.arange(M) / M)
        self.norm = float(R.weyl_order) * float(M) ** R.rank
        self._evaluation_cache: Dict[bool, np.ndarray] = {}
        logger.info(
            f"Transform setup {R.label} sigma={sigma.short_name} M={M}: "
            f"|W|={R.weyl_order}, |F|={len(self.points)}, |Lambda|={len(self.weights)}"
        )

    @property
    def materialize(self) -> bool:
        return len(self.points) * len(self.weights) <= get_settings().matrix_limit

    def residues(self, label: Sequence[int]) -> np.ndarray:
        """(|W|, |F|) integers (w lambda) . q mod M"""
        orbit = self.matrices.dot(np.asarray(label, dtype=np.int64))
        return orbit.dot(self.q.T) % self.M

    def phi_row(self, label: Sequence[int]) -> np.ndarray:
        return self.signs.dot(self.roots[self.residues(label)])

    def zeta_row(self, label: Sequence[int]) -> np.ndarray:
        row = self.phi_row(label)
        return row.real + row.imag

    def _evaluate_rows(self, hartley: bool) -> Iterator[np.ndarray]:
        evaluate = self.zeta_row if hartley else self.phi_row
        labels = [w.coords for w in self.weights]
        threads = get_settings().threads
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                yield from executor.map(evaluate, labels)
        else:
            for label in labels:
                yield evaluate(label)

    def rows(self, hartley: bool = False) -> Iterator[np.ndarray]:
        """Rows in weight order, from the cached matrix when it fits under the limit"""
        if not self.materialize:
            return self._evaluate_rows(hartley)
        if hartley not in self._evaluation_cache:
            self._evaluation_cache[hartley] = self._stack(list(self._evaluate_rows(hartley)), hartley)
        return iter(self._evaluation_cache[hartley])

    def _stack(self, rows: List[np.ndarray], hartley: bool) -> np.ndarray:
        if not rows:
            return np.zeros((0, len(self.points)), dtype=float if hartley else complex)
        matrix = np.vstack(rows)
        matrix.setflags(write=False)
        return matrix

    def evaluation_matrix(self, hartley: bool = False) -> np.ndarray:
        return self._stack(list(self.rows(hartley)), hartley)

    def check_samples(self, samples: SampleTable) -> None:
        samples.check()
        if samples.M != self.M or samples.sigma != self.sigma or samples.algebra != self.R.label:
            raise GridMismatch(
                f"Samples for {samples.algebra} sigma={samples.sigma.short_name} M={samples.M} "
                f"do not match {self.R.label} sigma={self.sigma.short_name} M={self.M}"
            )
        if samples.grid != self.points:
            raise GridMismatch("Sample grid differs from the point set")

    def check_spectrum(self, spectrum: Spectrum) -> None:
        spectrum.check()
        if spectrum.M != self.M or spectrum.sigma != self.sigma or spectrum.weights != self.weights:
            raise GridMismatch("Spectrum labels differ from the weight set")

    def coefficients(self, samples: SampleTable, hartley: bool = False) -> np.ndarray:
        self.check_samples(samples)
        weighted = self.eps * samples.values
        raw = np.array(
            [(row if hartley else np.conj(row)).dot(weighted) for row in self.rows(hartley)],
            dtype=float if hartley else complex,
        )
        return raw / (self.norm * self.h)

    def synthesize(self, coeffs: np.ndarray, hartley: bool = False) -> np.ndarray:
        values = np.zeros(len(self.points), dtype=float if hartley else complex)
        for c, row in zip(coeffs, self.rows(hartley)):
            values = values + c * row
        return values

    def table(self, values) -> SampleTable:
        return SampleTable(algebra=self.R.label, sigma=self.sigma, M=self.M, grid=self.points, values=values)


@lru_cache(maxsize=32)
def _transform(t: AlgebraType, sigma: SignHom, M: int, relaxed: bool, allow_large: bool) -> WeylTransform:
    return WeylTransform(build(t), sigma, M, relaxed, allow_large)


def get_transform(R: RootSystemData, sigma: SignHom, M: int, relaxed: bool = False,
                  allow_large: bool = False) -> WeylTransform:
    return _transform(R.algebra, sigma, M, relaxed, allow_large)


def evaluation_matrix(R: RootSystemData, sigma: SignHom, M: int, hartley: bool = False,
                      allow_large: bool = False) -> np.ndarray:
    """|Lambda| x |F| matrix of phi (or zeta) values, rows in weight order"""
    return get_transform(R, sigma, M, allow_large=allow_large).evaluation_matrix(hartley)


def _orbit_sum(R: RootSystemData, sigma: SignHom, label: Sequence[int], q: Sequence[int], M: int,
               allow_large: bool = False) -> complex:
    cap = _cap(R, allow_large)
    matrices = weyl_matrices(R, cap)
    signs = weyl_signs(R, sigma, cap)
    k = matrices.dot(np.asarray(label, dtype=np.int64)).dot(np.asarray(q, dtype=np.int64))
    residues, counts = np.unique(k % M, return_inverse=True)
    table = np.array([PhaseFraction.of(int(r), M).exp() for r in residues])
    return complex(np.sum(signs * table[counts]))


def eval_phi(R: RootSystemData, sigma: SignHom, lam: GridWeight, s: GridPoint,
             allow_large: bool = False) -> complex:
    if lam.M != s.M:
        raise GridMismatch(f"Weight at level {lam.M} and point at level {s.M}")
    check_sign(R, sigma)
    return _orbit_sum(R, sigma, lam.coords, s.q, s.M, allow_large)


def eval_zeta(R: RootSystemData, sigma: SignHom, lam: GridWeight, s: GridPoint,
              allow_large: bool = False) -> float:
    value = eval_phi(R, sigma, lam, s, allow_large)
    return value.real + value.imag


def eval_phi_at(R: RootSystemData, sigma: SignHom, label: Sequence[int], a: Sequence,
                allow_large: bool = False) -> complex:
    """Orbit function at a rational point given in dual-root coordinates"""
    check_sign(R, sigma)
    a = [Fraction(x) for x in a]
    denominator = lcm(*(x.denominator for x in a)) if a else 1
    q = [int(x * denominator) for x in a]
    return _orbit_sum(R, sigma, label, q, denominator, allow_large)


def sample_function(R: RootSystemData, sigma: SignHom, M: int, func: Callable[[GridPoint], complex],
                    relaxed: bool = False) -> SampleTable:
    grid = point_set(R, sigma, M, relaxed)
    return SampleTable(algebra=R.label, sigma=sigma, M=M, grid=grid, values=np.array([func(p) for p in grid]))


def scalar_product(R: RootSystemData, sigma: SignHom, M: int, f: SampleTable, g: SampleTable) -> complex:
    """sum_s eps(s) f(s) conj(g(s))"""
    for table in (f, g):
        table.check()
        if table.M != M or table.sigma != sigma or table.algebra != R.label:
            raise GridMismatch(f"Sample table for {table.algebra} at M={table.M} used with {R.label} at M={M}")
    if f.grid != g.grid:
        raise GridMismatch("Scalar product of samples on different grids")
    eps = np.array([p.eps for p in f.grid], dtype=float)
    return complex(np.sum(eps * f.values * np.conj(g.values)))


def forward(R: RootSystemData, sigma: SignHom, M: int, f: SampleTable, allow_large: bool = False) -> Spectrum:
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    coeffs = transform.coefficients(f)
    return Spectrum(algebra=R.label, sigma=sigma, M=M, weights=transform.weights, coeffs=coeffs)


def hartley_forward(R: RootSystemData, sigma: SignHom, M: int, f: SampleTable,
                    allow_large: bool = False) -> Spectrum:
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    if not f.is_real:
        raise ValueError("Hartley transform needs real samples")
    real = f.model_copy(update={"values": np.real(f.values).astype(float)})
    coeffs = transform.coefficients(real, hartley=True)
    return Spectrum(algebra=R.label, sigma=sigma, M=M, hartley=True, weights=transform.weights, coeffs=coeffs)


def inverse_on_grid(R: RootSystemData, sigma: SignHom, M: int, c: Spectrum,
                    allow_large: bool = False) -> SampleTable:
    """Interpolant evaluated on every grid point"""
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    transform.check_spectrum(c)
    return transform.table(transform.synthesize(c.coeffs, hartley=c.hartley))


def inverse(R: RootSystemData, sigma: SignHom, M: int, c: Spectrum, a: Sequence,
            allow_large: bool = False) -> complex:
    """I[f](a) = sum_lambda c_lambda phi_lambda(a) at rational dual-root coordinates a"""
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    transform.check_spectrum(c)
    if c.hartley:
        raise ValueError("Use hartley_inverse for a Hartley spectrum")
    return complex(sum(
        coeff * eval_phi_at(R, sigma, w.coords, a, allow_large) for coeff, w in zip(c.coeffs, c.weights)
    ))


def hartley_inverse(R: RootSystemData, sigma: SignHom, M: int, d: Spectrum, a: Optional[Sequence] = None,
                    allow_large: bool = False):
    """H[f] on the grid (a is None) or at one rational point"""
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    transform.check_spectrum(d)
    if not d.hartley:
        raise ValueError("Use inverse for a Fourier spectrum")
    if a is None:
        return transform.table(transform.synthesize(d.coeffs, hartley=True))
    total = 0.0
    for coeff, w in zip(d.coeffs, d.weights):
        value = eval_phi_at(R, sigma, w.coords, a, allow_large)
        total += coeff * (value.real + value.imag)
    return total


def roundtrip_error(R: RootSystemData, sigma: SignHom, M: int, f: SampleTable, hartley: bool = False,
                    allow_large: bool = False) -> float:
    """Max relative reconstruction error of inverse(forward(f)) on the grid"""
    if hartley:
        restored = hartley_inverse(R, sigma, M, hartley_forward(R, sigma, M, f, allow_large), None, allow_large)
    else:
        restored = inverse_on_grid(R, sigma, M, forward(R, sigma, M, f, allow_large), allow_large)
    if not len(f.values):
        return 0.0
    scale = max(float(np.max(np.abs(f.values))), np.finfo(float).tiny)
    return float(np.max(np.abs(restored.values - f.values)) / scale)


def plancherel_gap(R: RootSystemData, sigma: SignHom, M: int, f: SampleTable, spectrum: Spectrum) -> float:
    """Relative difference of sum eps |f|^2 and |W| M^n sum h |c|^2"""
    eps = np.array([p.eps for p in f.grid], dtype=float)
    h = np.array([w.h for w in spectrum.weights], dtype=float)
    left = float(np.sum(eps * np.abs(f.values) ** 2))
    right = R.weyl_order * M**R.rank * float(np.sum(h * np.abs(spectrum.coeffs) ** 2))
    return abs(left - right) / max(left, right, np.finfo(float).tiny)


def label_symmetry_check(R: RootSystemData, sigma: SignHom, M: int, lam: Sequence[int],
                         translation: Sequence[int], w: Optional[WeylElement] = None,
                         tolerance: float = 1e-9, allow_large: bool = False) -> bool:
    """phi_{w lambda + M p}(s) = sigma(w) phi_lambda(s) on every grid point"""
    transform = get_transform(R, sigma, M, relaxed=True, allow_large=allow_large)
    lam = np.asarray(lam, dtype=np.int64)
    if w is None:
        image, sign = lam, 1
    else:
        image, sign = np.array(w.matrix, dtype=np.int64).dot(lam), sign_value(R, sigma, w)
    moved = image + M * np.asarray(translation, dtype=np.int64)
    gap = np.max(np.abs(transform.phi_row(moved) - sign * transform.phi_row(lam)), initial=0.0)
    return bool(gap <= tolerance * transform.norm)


def vanishes_on_grid(R: RootSystemData, sigma: SignHom, M: int, lam: Sequence[int],
                     tolerance: float = 1e-9, allow_large: bool = False) -> bool:
    transform = get_transform(R, sigma, M, relaxed=True, allow_large=allow_large)
    return bool(np.max(np.abs(transform.phi_row(lam)), initial=0.0) <= tolerance * transform.norm)


def boundary_vanishing(R: RootSystemData, sigma: SignHom, M: int, allow_large: bool = False) -> List[Tuple[int, ...]]:
    """Labels of M(F_P minus F_P^sigma) on which phi^sigma does not vanish; empty when all do"""
    return [
        kac for kac in boundary_weights(R, sigma, M)
        if not vanishes_on_grid(R, sigma, M, kac[1:], allow_large=allow_large)
    ]


def exponential_sum(R: RootSystemData, mu: Sequence[int], M: int) -> complex:
    """sum over y in (1/M)Q^vee / Q^vee of exp(2 pi i <mu, y>), by explicit enumeration"""
    mu = np.asarray(mu, dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(M) / M)
    total = 0j
    for q in product(range(M), repeat=R.rank):
        total += roots[int(mu.dot(q)) % M]
    return total
