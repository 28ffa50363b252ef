from fractions import Fraction

import pytest

from k3evenset.disc import (
    disc_report_json,
    discriminant_form,
    discriminant_group,
    group_from_factors,
    groups_isomorphic,
)
from k3evenset.exactlin import IntMatrix
from k3evenset.families import GlueVector, make, overlattice
from k3evenset.lattice import IntegerLattice, contains, inner


def test_group_of_nikulin():
    g = discriminant_group(make("N"))
    assert g.invariant_factors == (2,) * 6
    assert g.order == 64


def test_group_of_l6():
    g = discriminant_group(make("L:2d=6"))
    assert g.invariant_factors == (2, 2, 2, 2, 2, 2, 6)
    assert g.order == 384


def test_group_of_l8_prime():
    g = discriminant_group(make("L':2d=8"))
    assert g.invariant_factors == (2, 2, 2, 2, 8)
    assert g.order == 128


def test_group_formula_canonicalization():
    assert group_from_factors((6, 2, 2)) == (2, 2, 6)
    assert group_from_factors((4, 6)) == (2, 12)
    assert group_from_factors((1, 1, 3)) == (3,)


def test_degenerate_lattice_rejected():
    degenerate = IntegerLattice("deg", IntMatrix([[0, 0], [0, 2]]), ("a", "b"))
    with pytest.raises(ValueError):
        discriminant_group(degenerate)


def test_order_equals_abs_det_and_lift_invariants():
    for label in ("L:2d=6", "L':2d=8", "M:2d'=4", "M':2d'=8", "N"):
        lat = make(label)
        g = discriminant_group(lat)
        assert g.order == abs(lat.determinant())
        for factor, lift in zip(g.invariant_factors, g.lifts):
            assert contains(lat, factor * lift)
            # lift lies in the dual lattice
            for b in lat.basis_vectors():
                assert inner(lift, b).denominator == 1
            # canonical representative has coordinates in [0, 1)
            assert all(0 <= c < 1 for c in lift.coords())


def test_overlattice_group_order_drops_by_four():
    base = make("L:2d=8")
    order = discriminant_group(base).order
    over = overlattice(base, GlueVector(frozenset({1, 2, 3, 4})).glue_class(base.root()))
    assert discriminant_group(over).order * 4 == order


def test_discriminant_form_values():
    ns2 = make("L:2d=2")
    half_l = ns2.root().vector([Fraction(1, 2)] + [0] * 8)
    assert discriminant_form(ns2, half_l) == Fraction(1, 2)
    assert discriminant_form(ns2, ns2.root().basis_vector(0)) == 0
    nik = make("N")
    x = nik.root().vector([Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0, 0, 0])
    assert discriminant_form(nik, x) == 1  # (N1+N2)^2/4 = -1 = 1 mod 2Z


def test_discriminant_form_shift_invariance():
    nik = make("N")
    x = nik.root().vector([Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0, 0, 0])
    shifted = x + nik.basis_vector(2)
    assert discriminant_form(nik, shifted) == discriminant_form(nik, x)


def test_discriminant_form_rejects_non_dual_vector():
    nik = make("N")
    bad = nik.root().vector([Fraction(1, 2)] + [0] * 7)
    with pytest.raises(ValueError):
        discriminant_form(nik, bad)


def test_groups_isomorphic():
    a_l8 = discriminant_group(make("L:2d=8"))
    a_m8p = discriminant_group(make("M':2d'=8"))
    assert groups_isomorphic(a_l8, a_m8p)
    a_l6 = discriminant_group(make("L:2d=6"))
    a_m6 = discriminant_group(make("M:2d'=6"))
    assert not groups_isomorphic(a_l6, a_m6)
    assert groups_isomorphic(a_l6, a_l6)


def test_report_json_shape():
    data = disc_report_json(discriminant_group(make("L:2d=6")))
    assert data["invariant_factors"] == ["2", "2", "2", "2", "2", "2", "6"]
    assert data["order"] == "384"
    assert len(data["lifts"]) == 7
