import random
from fractions import Fraction

import pytest

from k3evenset.exactlin import IntMatrix
from k3evenset.families import (
    anti_diagonal_e8,
    canonical_octet,
    k3_lattice,
    make,
    nikulin_sublattice,
    parse_divisor,
)
from k3evenset.lattice import (
    FrameVector,
    IntegerLattice,
    contains,
    content,
    coords_in,
    inner,
    is_primitive,
    isometry_from_basis_map,
    lattice_from_json,
    lattice_to_json,
    norm,
    same_lattice,
    saturation,
    short_vectors,
)


def nhat_vector(ns):
    root = ns.root()
    return root.vector([0] + [Fraction(1, 2)] * 8)


def test_even_lattice_flag_rejects_odd_diagonal():
    with pytest.raises(ValueError):
        IntegerLattice("odd", IntMatrix([[1]]), ("x",))


def test_gram_must_be_symmetric():
    with pytest.raises(ValueError):
        IntegerLattice("bad", IntMatrix([[0, 1], [2, 0]]), ("x", "y"))


def test_inner_nikulin_values():
    ns = make("L:2d=6")
    root = ns.root()
    nhat = nhat_vector(ns)
    assert inner(nhat, nhat) == -4
    assert inner(nhat, root.basis_vector(3)) == -1
    lvec = root.basis_vector(0)
    assert inner(lvec, lvec) == 6


def test_inner_is_bilinear_and_even():
    rng = random.Random(5)
    ns = make("L:2d=8")
    for _ in range(40):
        coords = [rng.randint(-3, 3) for _ in range(9)]
        x = ns.vector(coords)
        assert norm(x).denominator == 1
        assert norm(x).numerator % 2 == 0
        y = ns.vector([rng.randint(-3, 3) for _ in range(9)])
        assert inner(x, y) == inner(y, x)
        z = x + y
        assert inner(z, z) == norm(x) + 2 * inner(x, y) + norm(y)


def test_inner_rejects_frame_mismatch():
    a = make("L:2d=6").root().basis_vector(0)
    b = make("L:2d=8").root().basis_vector(0)
    with pytest.raises(ValueError):
        inner(a, b)


def test_contains_examples():
    ns6 = make("L:2d=6")
    nik = nikulin_sublattice(ns6)
    nhat = nhat_vector(ns6)
    assert contains(nik, nhat)
    assert not contains(nik, nhat / 2)
    ns4 = make("L:2d=4")
    ns4p = make("L':2d=4")
    v = parse_divisor(ns4, "(L-N1-N2)/2")
    assert not contains(ns4, v)
    assert contains(ns4p, v)


def test_contains_stable_under_reexpression():
    ns = make("L':2d=8")
    v = parse_divisor(ns, "(L-N1-N2-N3-N4)/2")
    in_basis = coords_in(ns, v)
    w = ns.vector(in_basis)
    assert v == w
    assert contains(ns, w)


def test_saturation_of_octet_in_nikulin():
    ns = make("L:2d=6")
    nik = nikulin_sublattice(ns)
    sat, index = saturation(nik, canonical_octet(ns))
    assert index == 2
    assert same_lattice(sat, nik)


def test_saturation_primitive_and_imprimitive_vectors():
    ns = make("L:2d=6")
    lvec = ns.root().basis_vector(0)
    sat, index = saturation(ns, [lvec])
    assert index == 1
    sat2, index2 = saturation(ns, [2 * lvec])
    assert index2 == 2
    assert same_lattice(sat, sat2)


def test_saturation_idempotent():
    ns = make("L:2d=6")
    nik = nikulin_sublattice(ns)
    sat, _ = saturation(nik, canonical_octet(ns))
    sat2, index = saturation(sat, sat.basis_vectors())
    assert index == 1
    assert same_lattice(sat, sat2)


def test_saturation_rejects_dependent_generators():
    ns = make("L:2d=6")
    root = ns.root()
    with pytest.raises(ValueError, match="dependent"):
        saturation(ns, [root.basis_vector(1), 2 * root.basis_vector(1)])


def test_is_primitive_matches_saturation_index():
    ns = make("L:2d=6")
    nik = nikulin_sublattice(ns)
    assert is_primitive(ns, nik)
    sat, index = saturation(ns, nik.basis_vectors())
    assert index == 1


def test_anti_diagonal_e8_primitive_in_k3():
    k3 = k3_lattice()
    anti = anti_diagonal_e8(k3)
    assert anti.gram == make("E8(-2)").gram
    assert is_primitive(k3, anti)


def test_imprimitive_sublattice_detected():
    ns = make("L:2d=6")
    doubled = IntegerLattice.framed("2L", ns.root(), [[2] + [0] * 8], ("x",))
    assert not is_primitive(ns, doubled)


def test_isometry_identity_and_swap():
    ns = make("L:2d=6")
    identity = [[1 if i == j else 0 for j in range(9)] for i in range(9)]
    assert isometry_from_basis_map(ns, ns, identity)
    swap = [row[:] for row in identity]
    swap[0], swap[1] = swap[1], swap[0]  # L <-> N1: 6 != -2
    assert not isometry_from_basis_map(ns, ns, swap)


def test_isometry_requires_unimodular_integral_map():
    ns = make("L:2d=6")
    doubled = [[2 if i == j else 0 for j in range(9)] for i in range(9)]
    assert not isometry_from_basis_map(ns, ns, doubled)
    halves = [[Fraction(1, 2) if i == j else 0 for j in range(9)] for i in range(9)]
    assert not isometry_from_basis_map(ns, ns, halves)


def test_isometry_consistency_det_and_signature():
    # a successful basis map forces equal determinants and signatures
    a = make("L':2d=8")
    b = make("L':2d=8")
    identity = [[1 if i == j else 0 for j in range(9)] for i in range(9)]
    assert isometry_from_basis_map(a, b, identity)
    assert a.determinant() == b.determinant()
    assert a.signature() == b.signature()


def test_short_vectors_counts_e8_roots():
    roots = short_vectors(make("E8(-1)"), 2)
    assert len(roots) == 240
    assert all(norm(v) == -2 for v in roots)


def test_short_vectors_e8_minus_two_has_no_roots():
    assert short_vectors(make("E8(-2)"), 2) == []
    assert len(short_vectors(make("E8(-2)"), 4)) == 240


def test_short_vectors_requires_negative_definite():
    with pytest.raises(ValueError):
        short_vectors(make("U"), 2)


def test_content():
    ns = make("L:2d=6")
    lvec = ns.root().basis_vector(0)
    assert content(ns, lvec) == 1
    assert content(ns, 3 * lvec) == 3


def test_vector_normalization():
    ns = make("L:2d=6")
    v = FrameVector(ns, [2, 4, 0, 0, 0, 0, 0, 0, 6], 4)
    assert v.numerators == (1, 2, 0, 0, 0, 0, 0, 0, 3)
    assert v.denominator == 2
    with pytest.raises(ValueError):
        FrameVector(ns, [1] * 9, 0)


def test_json_round_trip():
    ns = make("L':2d=8")
    data = lattice_to_json(ns)
    assert data["schema"] == "k3evenset/1"
    assert all(isinstance(x, str) for row in data["gram"] for x in row)
    back = lattice_from_json(data, parent=ns.root())
    assert back.gram == ns.gram
    assert back.basis_names == ns.basis_names
    assert same_lattice(back, ns)


def test_json_requires_parent_for_framed():
    ns = make("L':2d=8")
    data = lattice_to_json(ns)
    with pytest.raises(ValueError):
        lattice_from_json(data)
