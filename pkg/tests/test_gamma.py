import pytest

from weyldft.lattice.gamma import (
    StabSign,
    act,
    compose,
    gamma_group,
    is_lex_max,
    lex_max,
    orbit_and_stab,
    sigma_on_stab,
    stabilizer_order,
)
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import get_root_data


@pytest.mark.parametrize("label, order", [
    ("A1", 2), ("A2", 3), ("A5", 6), ("B3", 2), ("C3", 2), ("D4", 4), ("D5", 4),
    ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1),
])
def test_gamma_order_is_connection_index(label, order):
    assert len(gamma_group(get_root_data(label))) == order


@pytest.mark.parametrize("label", ["A3", "B4", "C3", "D4", "D5", "D6", "E6", "E7"])
def test_gamma_preserves_comark_weights(label):
    R = get_root_data(label)
    weights = R.weight_weights
    for gamma in gamma_group(R):
        assert act(gamma, weights) == weights


def test_rotation_on_a2():
    R = get_root_data("A2")
    group = {g.label: g for g in gamma_group(R)}
    assert act(group["γ_1"], (7, 0, 0)) == (0, 7, 0)
    assert compose(group["γ_1"], group["γ_1"], gamma_group(R)).label == "γ_2"
    assert compose(group["γ_1"], group["γ_2"], gamma_group(R)).label == "id"


def test_orbit_and_stabilizer():
    group = gamma_group(get_root_data("A2"))
    orbit, stab = orbit_and_stab(group, (0, 7, 0))
    assert orbit == [(7, 0, 0), (0, 7, 0), (0, 0, 7)]
    assert [g.label for g in stab] == ["id"]
    orbit, stab = orbit_and_stab(group, (2, 2, 2))
    assert orbit == [(2, 2, 2)]
    assert stabilizer_order(group, (2, 2, 2)) == 3


def test_lex_max_representative():
    group = gamma_group(get_root_data("A2"))
    assert lex_max(group, (0, 2, 5)) == (5, 0, 2)
    assert is_lex_max(group, (5, 0, 2))
    assert not is_lex_max(group, (0, 2, 5))


def test_stabilizer_sign():
    A3 = get_root_data("A3")
    group = gamma_group(A3)
    assert sigma_on_stab(group, SignHom.DET, (1, 1, 1, 1)) == StabSign.CONTAINS_MINUS
    assert sigma_on_stab(group, SignHom.IDENTITY, (1, 1, 1, 1)) == StabSign.ALL_PLUS
    assert sigma_on_stab(group, SignHom.DET, (4, 0, 0, 0)) == StabSign.ALL_PLUS


def test_signs_on_non_simply_laced_types():
    B3 = {g.label: g for g in gamma_group(get_root_data("B3"))}
    assert (B3["γ_3"].sign_e, B3["γ_3"].sign_s, B3["γ_3"].sign_l) == (1, -1, -1)
    C2 = {g.label: g for g in gamma_group(get_root_data("C2"))}
    assert (C2["γ_1"].sign_e, C2["γ_1"].sign_s, C2["γ_1"].sign_l) == (-1, 1, -1)
    assert C2["id"].sign(SignHom.LONG) == 1


def test_short_sign_undefined_on_simply_laced():
    gamma = gamma_group(get_root_data("D4"))[1]
    with pytest.raises(ValueError):
        gamma.sign(SignHom.SHORT)


def test_sign_table():
    table = get_root_data("C2").sign_table
    assert table[("γ_1", SignHom.DET)] == -1
    assert table[("id", SignHom.SHORT)] == 1
    assert ("γ_1", SignHom.SHORT) not in get_root_data("A2").sign_table


@pytest.mark.parametrize("label", ["A3", "A4", "B3", "B4", "C3", "D4", "D5", "D6", "D7", "E6", "E7"])
def test_signs_are_homomorphisms(label):
    R = get_root_data(label)
    group = gamma_group(R)
    sigmas = [SignHom.DET] if R.simply_laced else [SignHom.DET, SignHom.SHORT, SignHom.LONG]
    for g1 in group:
        for g2 in group:
            product = compose(g1, g2, group)
            for sigma in sigmas:
                assert product.sign(sigma) == g1.sign(sigma) * g2.sign(sigma)
