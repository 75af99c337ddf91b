import io
import json

import pytest

from weyldft.errors import LevelTooSmall
from weyldft.grids.grids import (
    boundary_weights,
    congruence_general,
    congruence_simplified,
    dual_root_coords,
    dual_weight_point_set,
    kac_solutions,
    point_candidates,
    point_set,
    rho_shift,
    tilde_sets,
    weight_set,
    weight_superset,
    within_hypothesis,
)
from weyldft.grids.serialize import (
    dumps,
    points_document,
    points_from_document,
    weights_document,
    write_points_csv,
    write_weights_csv,
)
from weyldft.lattice.affine import kac_of_point
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import admissible_signs, generalized_coxeter, get_root_data


@pytest.fixture
def a2():
    return get_root_data("A2")


def test_kac_solutions_are_sorted_descending():
    solutions = kac_solutions((1, 1, 1), 2, (0, 0, 0))
    assert len(solutions) == 6
    assert solutions[0] == (2, 0, 0)
    assert solutions == sorted(solutions, reverse=True)
    assert kac_solutions((1, 2), 1, (0, 1)) == []


def test_a2_level_seven(a2):
    assert len(point_set(a2, SignHom.IDENTITY, 7)) == 12
    assert len(weight_set(a2, SignHom.IDENTITY, 7)) == 12
    assert len(point_set(a2, SignHom.DET, 7)) == 5
    assert len(weight_set(a2, SignHom.DET, 7)) == 5
    assert len(weight_superset(a2, SignHom.IDENTITY, 7)) == 36
    assert len(weight_superset(a2, SignHom.DET, 7)) == 15
    assert len(dual_weight_point_set(a2, SignHom.IDENTITY, 7)) == 36


def test_point_set_covers_the_torus(a2):
    points = point_set(a2, SignHom.IDENTITY, 7)
    assert sum(p.eps for p in points) == 49
    assert points[0].kac == (7, 0, 0)
    assert points[0].q == (0, 0)
    assert points[0].eps == 1


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B3", "C2", "C3", "G2"])
@pytest.mark.parametrize("M", range(1, 9))
def test_epsilon_sums_to_level_power(label, M):
    R = get_root_data(label)
    assert sum(p.eps for p in point_set(R, SignHom.IDENTITY, M)) == M**R.rank


def test_det_points_are_interior(a2):
    points = point_set(a2, SignHom.DET, 7)
    assert all(min(p.kac) >= 1 for p in points)
    assert all(p.eps == 6 for p in points)


def test_dual_root_coordinates_round_trip(a2):
    for p in point_set(a2, SignHom.IDENTITY, 7):
        assert kac_of_point(a2, p.q, 7) == p.kac
        assert dual_root_coords(a2, p.kac) == p.q


def test_dual_root_coords_rejects_off_lattice(a2):
    with pytest.raises(RuntimeError):
        dual_root_coords(a2, (6, 1, 0))


@pytest.mark.parametrize("label, M", [
    ("A3", 6), ("A4", 5), ("B3", 6), ("B4", 6), ("C3", 6), ("D4", 6), ("D5", 6), ("D6", 5), ("D7", 5),
    ("E6", 6), ("E7", 5),
])
def test_congruence_forms_agree(label, M):
    R = get_root_data(label)
    for s in point_candidates(R, SignHom.IDENTITY, M):
        assert congruence_general(R, s) == congruence_simplified(R, s), s


def test_level_too_small(a2):
    with pytest.raises(LevelTooSmall):
        point_set(a2, SignHom.DET, 3)
    with pytest.raises(LevelTooSmall):
        weight_set(a2, SignHom.DET, 2)
    assert len(point_set(a2, SignHom.DET, 3, relaxed=True)) == 1
    assert not within_hypothesis(a2, SignHom.DET, 3)
    assert within_hypothesis(a2, SignHom.DET, 4)


def test_h_coefficients_on_a2(a2):
    weights = {w.kac: w.h for w in weight_set(a2, SignHom.IDENTITY, 7)}
    assert weights[(7, 0, 0)] == 6
    assert weights[(5, 1, 1)] == 1
    assert (0, 7, 0) not in weights


def test_rho_shift_gives_det_weights(a2):
    plus, minus = tilde_sets(a2, SignHom.DET, 4)
    assert len(plus) == 5
    assert minus == []
    shifted = sorted(rho_shift(a2, SignHom.DET, plus), reverse=True)
    assert shifted == [w.kac for w in weight_set(a2, SignHom.DET, 7)]


def test_tilde_sets_split_by_stabilizer_sign():
    A3 = get_root_data("A3")
    plus, minus = tilde_sets(A3, SignHom.DET, 4)
    assert (1, 1, 1, 1) in minus
    assert (4, 0, 0, 0) in plus


def test_boundary_weights(a2):
    assert len(boundary_weights(a2, SignHom.DET, 7)) == 7
    assert all(0 in lam for lam in boundary_weights(a2, SignHom.DET, 7))
    assert boundary_weights(a2, SignHom.IDENTITY, 7) == []


def test_points_document(a2):
    points = point_set(a2, SignHom.DET, 7)
    document = points_document(a2, SignHom.DET, 7, points)
    assert document["algebra"] == "A2"
    assert document["sigma"] == "det"
    assert document["within_hypothesis"] is True
    assert document["count"] == 5
    assert points_from_document(json.loads(dumps(document))) == points


def test_weights_document(a2):
    weights = weight_set(a2, SignHom.IDENTITY, 7)
    document = weights_document(a2, SignHom.IDENTITY, 7, weights)
    assert document["weights"][0] == {"kac": [7, 0, 0], "h": 6}


def test_csv_writers(a2):
    stream = io.StringIO()
    write_points_csv(point_set(a2, SignHom.IDENTITY, 7), stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "kac_0,kac_1,kac_2,q_1,q_2,eps"
    assert lines[1] == "7,0,0,0,0,1"
    assert len(lines) == 13

    stream = io.StringIO()
    write_weights_csv(weight_set(a2, SignHom.DET, 7), stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "kac_0,kac_1,kac_2,h"
    assert len(lines) == 6


@pytest.mark.parametrize("label", ["A2", "C2", "G2", "B3"])
@pytest.mark.parametrize("M", range(1, 9))
def test_rho_shift_identity(label, M):
    R = get_root_data(label)
    for sigma in admissible_signs(R):
        shifted = sorted(rho_shift(R, sigma, tilde_sets(R, sigma, M)[0]), reverse=True)
        direct = [w.kac for w in weight_set(R, sigma, M + generalized_coxeter(R, sigma))]
        assert shifted == direct
