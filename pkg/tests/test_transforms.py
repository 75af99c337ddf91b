from fractions import Fraction

import numpy as np
import pytest

from weyldft.config import Settings
from weyldft.errors import GridMismatch, GroupTooLarge
from weyldft.grids.grids import point_set, weight_set
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import get_root_data
from weyldft.lattice.weyl import enumerate_weyl
from weyldft.transforms import transforms
from weyldft.transforms.models import PhaseFraction, SampleTable, Spectrum
from weyldft.transforms.transforms import (
    WeylTransform,
    boundary_vanishing,
    eval_phi,
    eval_phi_at,
    eval_zeta,
    evaluation_matrix,
    exponential_sum,
    forward,
    get_transform,
    hartley_forward,
    hartley_inverse,
    inverse,
    inverse_on_grid,
    label_symmetry_check,
    plancherel_gap,
    roundtrip_error,
    sample_function,
    scalar_product,
    vanishes_on_grid,
)

CASES = [
    ("A2", "1", 7), ("A2", "e", 7), ("C2", "s", 5), ("C2", "l", 6), ("G2", "1", 5), ("G2", "e", 8),
    ("A3", "e", 6), ("B3", "e", 9), ("B3", "l", 6), ("C3", "1", 4),
]


def random_table(R, sigma, M, seed=0, real=False) -> SampleTable:
    transform = get_transform(R, sigma, M)
    rng = np.random.default_rng(seed)
    values = rng.normal(size=len(transform.points))
    if not real:
        values = values + 1j * rng.normal(size=len(transform.points))
    return transform.table(values)


@pytest.fixture
def a2():
    return get_root_data("A2")


def test_phase_fraction():
    phase = PhaseFraction.of(-3, 7)
    assert phase.numerator == 4
    assert phase.as_fraction() == Fraction(4, 7)
    assert PhaseFraction.of(0, 5).exp() == 1
    with pytest.raises(ValueError):
        PhaseFraction.of(1, 0)


def test_trivial_orbit_function(a2):
    assert eval_phi_at(a2, SignHom.IDENTITY, (0, 0), (Fraction(1, 3), Fraction(2, 5))) == pytest.approx(6)
    assert eval_phi_at(a2, SignHom.DET, (0, 0), (Fraction(1, 3), 0)) == pytest.approx(0)


def test_eval_phi_matches_rational_evaluation(a2):
    weights = weight_set(a2, SignHom.DET, 7)
    for p in point_set(a2, SignHom.DET, 7):
        a = [Fraction(x, 7) for x in p.q]
        for w in weights:
            assert eval_phi(a2, SignHom.DET, w, p) == pytest.approx(eval_phi_at(a2, SignHom.DET, w.coords, a))


def test_eval_zeta_is_real_plus_imaginary(a2):
    w = weight_set(a2, SignHom.IDENTITY, 7)[3]
    p = point_set(a2, SignHom.IDENTITY, 7)[4]
    value = eval_phi(a2, SignHom.IDENTITY, w, p)
    assert eval_zeta(a2, SignHom.IDENTITY, w, p) == pytest.approx(value.real + value.imag)


def test_eval_phi_rejects_mixed_levels(a2):
    w = weight_set(a2, SignHom.IDENTITY, 7)[0]
    p = point_set(a2, SignHom.IDENTITY, 8)[0]
    with pytest.raises(GridMismatch):
        eval_phi(a2, SignHom.IDENTITY, w, p)


@pytest.mark.parametrize("label, sigma, M", CASES)
@pytest.mark.parametrize("hartley", [False, True])
def test_gram_matrix_is_diagonal(label, sigma, M, hartley):
    R = get_root_data(label)
    transform = get_transform(R, SignHom.parse(sigma), M)
    matrix = evaluation_matrix(R, SignHom.parse(sigma), M, hartley)
    gram = (matrix * transform.eps).dot(matrix.T if hartley else np.conj(matrix).T)
    np.testing.assert_allclose(gram, np.diag(transform.norm * transform.h), atol=1e-9 * transform.norm)


def test_evaluation_matrix_shape_and_dtype(a2):
    fourier = evaluation_matrix(a2, SignHom.IDENTITY, 7)
    hartley = evaluation_matrix(a2, SignHom.IDENTITY, 7, hartley=True)
    assert fourier.shape == (12, 12)
    assert np.iscomplexobj(fourier)
    assert hartley.dtype == float
    np.testing.assert_allclose(hartley, fourier.real + fourier.imag)


@pytest.mark.parametrize("label, sigma, M", CASES)
def test_roundtrip(label, sigma, M):
    R = get_root_data(label)
    sign = SignHom.parse(sigma)
    assert roundtrip_error(R, sign, M, random_table(R, sign, M)) < 1e-10
    assert roundtrip_error(R, sign, M, random_table(R, sign, M, real=True), hartley=True) < 1e-10


@pytest.mark.parametrize("label, sigma, M", CASES)
def test_plancherel(label, sigma, M):
    R = get_root_data(label)
    sign = SignHom.parse(sigma)
    f = random_table(R, sign, M, seed=3)
    assert plancherel_gap(R, sign, M, f, forward(R, sign, M, f)) < 1e-9
    real = random_table(R, sign, M, seed=4, real=True)
    assert plancherel_gap(R, sign, M, real, hartley_forward(R, sign, M, real)) < 1e-9


def test_forward_of_a_single_orbit_function(a2):
    weights = weight_set(a2, SignHom.IDENTITY, 7)
    target = weights[2]
    f = sample_function(a2, SignHom.IDENTITY, 7, lambda p: eval_phi(a2, SignHom.IDENTITY, target, p))
    spectrum = forward(a2, SignHom.IDENTITY, 7, f)
    expected = np.zeros(len(weights), dtype=complex)
    expected[2] = 1
    np.testing.assert_allclose(spectrum.coeffs, expected, atol=1e-12)


def test_inverse_interpolates_grid_values(a2):
    f = random_table(a2, SignHom.DET, 7, seed=1)
    spectrum = forward(a2, SignHom.DET, 7, f)
    for p, value in zip(f.grid, f.values):
        a = [Fraction(x, 7) for x in p.q]
        assert inverse(a2, SignHom.DET, 7, spectrum, a) == pytest.approx(value)
    np.testing.assert_allclose(inverse_on_grid(a2, SignHom.DET, 7, spectrum).values, f.values, atol=1e-12)


def test_hartley_inverse_at_points_and_on_grid(a2):
    f = random_table(a2, SignHom.IDENTITY, 7, seed=2, real=True)
    spectrum = hartley_forward(a2, SignHom.IDENTITY, 7, f)
    assert spectrum.hartley
    assert spectrum.coeffs.dtype == float
    p = f.grid[5]
    a = [Fraction(x, 7) for x in p.q]
    assert hartley_inverse(a2, SignHom.IDENTITY, 7, spectrum, a) == pytest.approx(f.values[5])
    np.testing.assert_allclose(hartley_inverse(a2, SignHom.IDENTITY, 7, spectrum).values, f.values, atol=1e-12)


def test_inverse_rejects_wrong_spectrum_kind(a2):
    f = random_table(a2, SignHom.IDENTITY, 7, real=True)
    fourier = forward(a2, SignHom.IDENTITY, 7, f)
    hartley = hartley_forward(a2, SignHom.IDENTITY, 7, f)
    with pytest.raises(ValueError):
        inverse(a2, SignHom.IDENTITY, 7, hartley, (0, 0))
    with pytest.raises(ValueError):
        hartley_inverse(a2, SignHom.IDENTITY, 7, fourier)


def test_hartley_needs_real_samples(a2):
    with pytest.raises(ValueError):
        hartley_forward(a2, SignHom.IDENTITY, 7, random_table(a2, SignHom.IDENTITY, 7))


def test_grid_mismatch(a2):
    points = point_set(a2, SignHom.IDENTITY, 7)
    short = SampleTable(algebra="A2", sigma=SignHom.IDENTITY, M=7, grid=points, values=np.ones(11))
    with pytest.raises(GridMismatch):
        forward(a2, SignHom.IDENTITY, 7, short)
    other_level = random_table(a2, SignHom.IDENTITY, 8)
    with pytest.raises(GridMismatch):
        forward(a2, SignHom.IDENTITY, 7, other_level)
    spectrum = forward(a2, SignHom.IDENTITY, 7, random_table(a2, SignHom.IDENTITY, 7))
    truncated = Spectrum(algebra="A2", sigma=SignHom.IDENTITY, M=7, weights=spectrum.weights, coeffs=spectrum.coeffs[:-1])
    with pytest.raises(GridMismatch):
        inverse_on_grid(a2, SignHom.IDENTITY, 7, truncated)


def test_scalar_product(a2):
    f = random_table(a2, SignHom.IDENTITY, 7, seed=5)
    eps = np.array([p.eps for p in f.grid])
    norm = scalar_product(a2, SignHom.IDENTITY, 7, f, f)
    assert norm.real == pytest.approx(np.sum(eps * np.abs(f.values) ** 2))
    assert norm.imag == pytest.approx(0, abs=1e-12)
    with pytest.raises(GridMismatch):
        scalar_product(a2, SignHom.IDENTITY, 7, f, random_table(a2, SignHom.DET, 7))


def test_sample_payload_weighted_export(a2):
    f = random_table(a2, SignHom.IDENTITY, 7, seed=6)
    payload = f.to_payload(weighted=True)
    assert payload["weighted"] is True
    assert payload["values"][0] == [f.values[0].real * f.grid[0].eps, f.values[0].imag * f.grid[0].eps]
    restored = SampleTable.from_payload(payload)
    np.testing.assert_allclose(restored.values, f.values)
    payload["values"] = payload["values"][:-1]
    with pytest.raises(GridMismatch):
        SampleTable.from_payload(payload)


def test_streaming_matches_materialized(monkeypatch):
    R = get_root_data("C2")
    sigma = SignHom.SHORT
    f = random_table(R, sigma, 6, seed=7)
    materialized = WeylTransform(R, sigma, 6)
    assert materialized.materialize
    expected = materialized.coefficients(f)
    expected_values = materialized.synthesize(expected)

    monkeypatch.setattr(transforms, "get_settings", lambda: Settings(matrix_limit=1))
    streamed = WeylTransform(R, sigma, 6)
    assert not streamed.materialize
    coeffs = streamed.coefficients(f)
    assert np.array_equal(coeffs, expected)
    assert np.array_equal(streamed.synthesize(coeffs), expected_values)


def test_threaded_rows_match(monkeypatch):
    R = get_root_data("C2")
    sigma = SignHom.IDENTITY
    serial = WeylTransform(R, sigma, 6).evaluation_matrix()
    monkeypatch.setattr(transforms, "get_settings", lambda: Settings(threads=4))
    threaded = WeylTransform(R, sigma, 6).evaluation_matrix()
    assert np.array_equal(serial, threaded)


def test_large_group_needs_override():
    E8 = get_root_data("E8")
    with pytest.raises(GroupTooLarge):
        get_transform(E8, SignHom.IDENTITY, 2)


def test_label_symmetry(a2):
    elements = enumerate_weyl(a2)
    for w in elements:
        assert label_symmetry_check(a2, SignHom.DET, 7, (2, 1), (1, -1), w)
        assert label_symmetry_check(a2, SignHom.IDENTITY, 7, (3, 0), (0, 2), w)
    assert label_symmetry_check(a2, SignHom.IDENTITY, 7, (1, 0), (0, 0))


def test_boundary_labels_vanish(a2):
    assert boundary_vanishing(a2, SignHom.DET, 7) == []
    C2 = get_root_data("C2")
    assert boundary_vanishing(C2, SignHom.LONG, 6) == []
    assert vanishes_on_grid(a2, SignHom.DET, 7, (0, 3))
    assert not vanishes_on_grid(a2, SignHom.DET, 7, (1, 1))


@pytest.mark.parametrize("mu, expected", [((0, 0), 25), ((5, 0), 25), ((5, 10), 25), ((1, 0), 0), ((2, 3), 0)])
def test_exponential_sum(a2, mu, expected):
    assert exponential_sum(a2, mu, 5) == pytest.approx(expected, abs=1e-9)
