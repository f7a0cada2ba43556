from fractions import Fraction

import pytest

from iwadec.chartable import (
    Character,
    CycloElement,
    character_table,
    cyclo_rational,
    galois_act,
    gamma_act,
    inner_product,
    zeta,
)
from iwadec.errors import NotAUnit
from iwadec.groups import conjugacy_classes, load_group, make_gamma_action

import groupzoo as zoo
from oracles import regular_character_table


def test_cyclo_arithmetic():
    z = zeta(5)
    assert z * z == zeta(5, 2)
    assert z * zeta(5, 4) == cyclo_rational(5, 1)
    # 1 + z + z^2 + z^3 + z^4 = 0
    s = cyclo_rational(5, 1) + z + zeta(5, 2) + zeta(5, 3) + zeta(5, 4)
    assert s.is_zero()
    assert (z + z).coeffs[1] == Fraction(2)
    assert (z / 2 * 2) == z


def test_cyclo_galois_and_conj():
    z = zeta(7)
    assert z.galois(2) == zeta(7, 2)
    assert z.conj() == zeta(7, 6)
    assert (z + zeta(7, 6)).conj() == z + zeta(7, 6)
    with pytest.raises(NotAUnit):
        z.galois(7)


def test_cyclo_nontrivial_reduction():
    # zeta_6 = -zeta_3^2 lands outside the naive power range
    z6 = zeta(6)
    assert z6 * z6 * z6 == cyclo_rational(6, -1)
    z12 = zeta(12)
    assert z12 * zeta(12, 11) == cyclo_rational(12, 1)


def test_cyclic_table_is_dual_group():
    n = 7
    g = load_group(zoo.cyclic(n))
    rows = character_table(g)
    assert len(rows) == n
    assert all(chi.degree == 1 for chi in rows)
    expected = {tuple(zeta(n, j * k) for k in range(n)) for j in range(n)}
    assert {chi.values for chi in rows} == expected


def test_symmetric3_degrees():
    g = load_group({"perm_gens": [[[1, 2, 3]], [[1, 2]]]})
    rows = character_table(g)
    assert sorted(chi.degree for chi in rows) == [1, 1, 2]
    # all values rational for S_3
    assert all(v.is_rational() for chi in rows for v in chi.values)


def test_extraspecial27_degrees():
    g = load_group(zoo.heisenberg3())
    rows = character_table(g)
    assert len(rows) == 11
    assert sorted(chi.degree for chi in rows) == [1] * 9 + [3, 3]
    assert sum(chi.degree**2 for chi in rows) == 27


def test_row_orthogonality_exact():
    for spec in [zoo.quaternion8(), zoo.frobenius21(), zoo.dicyclic12()]:
        g = load_group(spec)
        rows = character_table(g)
        for i, chi in enumerate(rows):
            for j, psi in enumerate(rows):
                assert inner_product(chi, psi) == (1 if i == j else 0)


def test_column_orthogonality_exact():
    g = load_group({"perm_gens": [[[1, 2, 3]], [[1, 2]]]})
    cc = conjugacy_classes(g)
    rows = character_table(g)
    for i in range(len(cc)):
        for j in range(len(cc)):
            s = cyclo_rational(rows[0].m, 0)
            for chi in rows:
                s = s + chi.values[i] * chi.values[j].conj()
            want = Fraction(g.order, cc.class_sizes[i]) if i == j else Fraction(0)
            assert s.as_rational() == want


def test_gamma_act_trivial_and_orbit():
    g = load_group(zoo.cyclic(7))
    act_id = make_gamma_action(g, {"images": list(range(7))}, p=3)
    act_sq = make_gamma_action(g, {"images": zoo.cyclic_power_images(7, 2)}, p=3)
    rows = character_table(g)
    for chi in rows:
        assert gamma_act(chi, act_id) == chi
    # eta(x) = zeta^j goes to eta(x^2) = zeta^(2j)
    chi1 = next(c for c in rows if c.values[1] == zeta(7, 1))
    moved = gamma_act(chi1, act_sq)
    assert moved.values[1] == zeta(7, 2)
    # orbit closes after three steps: {1, 2, 4}
    third = gamma_act(gamma_act(moved, act_sq), act_sq)
    assert third == chi1


def test_gamma_act_returns_table_rows():
    spec, images = zoo.c3c3_shear()
    g = load_group(spec)
    act = make_gamma_action(g, {"images": images}, p=3)
    rows = character_table(g)
    table_set = set(rows)
    for chi in rows:
        assert gamma_act(chi, act) in table_set


def test_galois_act_examples():
    g = load_group(zoo.cyclic(7))
    rows = character_table(g)
    chi1 = next(c for c in rows if c.values[1] == zeta(7, 1))
    assert galois_act(chi1, 1) == chi1
    assert galois_act(chi1, 3).values[1] == zeta(7, 3)
    with pytest.raises(NotAUnit):
        galois_act(chi1, 14)
    # rational-valued characters are Galois-fixed
    s3 = load_group({"perm_gens": [[[1, 2, 3]], [[1, 2]]]})
    for chi in character_table(s3):
        assert galois_act(chi, 5) == chi


def test_actions_commute():
    g = load_group(zoo.cyclic(9))
    act = make_gamma_action(g, {"images": zoo.cyclic_power_images(9, 4)}, p=3)
    rows = character_table(g)
    for chi in rows:
        for a in (2, 5, 8):
            assert galois_act(gamma_act(chi, act), a) == gamma_act(
                galois_act(chi, a), act
            )


def test_canonical_order_stable():
    g = load_group(zoo.quaternion8())
    rows1 = character_table(g)
    rows2 = character_table(g)
    assert [c.sort_key() for c in rows1] == [c.sort_key() for c in rows2]
    keys = [c.sort_key() for c in rows1]
    assert keys == sorted(keys)


@pytest.mark.parametrize(
    "spec",
    [
        {"perm_gens": [[[1, 2, 3]], [[1, 2]]]},
        zoo.quaternion8(),
        zoo.dicyclic12(),
        {"perm_gens": [[[1, 2, 3]], [[1, 2], [3, 4]]]},  # A_4
        zoo.frobenius21(),
        zoo.sl23(),
    ],
    ids=["s3", "q8", "dic12", "a4", "f21", "sl23"],
)
def test_against_regular_rep_oracle(spec):
    g = load_group(spec)
    rows = character_table(g)
    got = sorted(
        (chi.degree, tuple(v.coeffs for v in chi.values)) for chi in rows
    )
    want = sorted(
        (deg, tuple(v.coeffs for v in vals))
        for deg, vals in regular_character_table([list(r) for r in g.mul_table])
    )
    assert got == want
