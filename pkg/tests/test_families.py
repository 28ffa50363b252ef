from fractions import Fraction
from itertools import combinations

import pytest

from k3evenset.disc import discriminant_group
from k3evenset.exactlin import Signature, det, signature
from k3evenset.families import (
    GlueVector,
    NSFamily,
    admissible_glues,
    anti_diagonal_e8,
    canonical_glue_support,
    glue_equivalent,
    k3_embedding,
    k3_lattice,
    make,
    nikulin_sublattice,
    overlattice,
    parse_divisor,
    parse_family,
    validate_glue,
)
from k3evenset.lattice import contains, inner, is_primitive, norm, same_lattice


def test_parse_family_grammar():
    f = parse_family("L:2d=8")
    assert f.kind == "L" and f.parameter == 4
    f = parse_family("L':2d=8")
    assert f.kind == "L'" and f.parameter == 4
    f = parse_family("M:2d'=4")
    assert f.kind == "M" and f.parameter == 2
    assert parse_family("M':2d'=8").label() == "M':2d'=8"
    for bad in ("L,2d=8", "L:2d'=8", "M:2d=4", "L:2d=7", "L:2d=0", "X:2d=4"):
        with pytest.raises(ValueError):
            parse_family(bad)


def test_lprime_requires_even_d():
    with pytest.raises(ValueError, match="2 mod 4"):
        parse_family("L':2d=6")


def test_mprime_requires_even_dprime():
    with pytest.raises(ValueError, match="parity"):
        NSFamily("M'", 3)


def test_make_l4():
    lat = make("L:2d=4")
    assert lat.rank == 9
    assert det(lat.gram) == 256
    assert signature(lat.gram) == Signature(1, 8, 0)


def test_make_e8():
    lat = make("E8(-1)")
    assert det(lat.gram) == 1
    assert signature(lat.gram) == Signature(0, 8, 0)


def test_make_l4_prime():
    lat = make("L':2d=4")
    assert lat.rank == 9
    assert abs(det(lat.gram)) == 64
    assert all(lat.gram[i, i] % 2 == 0 for i in range(9))


def test_make_is_memoized():
    assert make("L:2d=6") is make("L:2d=6")


def test_family_roots_shared():
    assert make("L:2d=8").root() is make("L':2d=8").root()


def brute_force_glues(d):
    """Independent oracle: test every support by direct pairing arithmetic.

    Supports of size 0 and 8 are excluded up front: there v/2 = 0 or Nhat
    already lies in N, so the adjoined class would divide L itself.
    """
    base = make(f"L:2d={2*d}")
    root = base.root()
    good = []
    for size in range(2, 8, 2):
        for s in combinations(range(1, 9), size):
            glue = root.vector(
                [Fraction(1, 2)]
                + [Fraction(1, 2) if i in s else Fraction(0) for i in range(1, 9)]
            )
            try:
                validate_glue(base, glue)
            except ValueError:
                continue
            good.append(frozenset(s))
    return good


@pytest.mark.parametrize("d,count", [(1, 0), (2, 56), (3, 0), (4, 70), (5, 0), (6, 56), (8, 70)])
def test_admissible_glue_counts(d, count):
    classes = admissible_glues(d)
    total = sum(len(c) for c in classes)
    assert total == count
    assert len(classes) == (1 if count else 0)
    assert sorted(g.support for cls in classes for g in cls) == sorted(brute_force_glues(d))


def test_admissible_glues_deterministic_and_parallel():
    assert admissible_glues(4) == admissible_glues(4, jobs=4)


def test_glue_sizes_per_parity():
    sizes = {len(g.support) for cls in admissible_glues(2) for g in cls}
    assert sizes == {2, 6}
    sizes = {len(g.support) for cls in admissible_glues(4) for g in cls}
    assert sizes == {4}


def test_glue_equivalent_complement_and_permutation():
    assert glue_equivalent(2, GlueVector(frozenset({1, 2})), GlueVector(frozenset({3, 4, 5, 6, 7, 8})))
    assert glue_equivalent(2, GlueVector(frozenset({1, 2})), GlueVector(frozenset({5, 6})))
    assert glue_equivalent(4, GlueVector(frozenset({1, 2, 3, 4})), GlueVector(frozenset({1, 2, 3, 5})))


def test_glue_equivalent_pairwise_sample():
    glues = [g for cls in admissible_glues(2) for g in cls]
    sample = glues[::11]
    for a in sample:
        for b in sample:
            assert glue_equivalent(2, a, b)


def test_glue_equivalent_rejects_inadmissible():
    with pytest.raises(ValueError):
        glue_equivalent(3, GlueVector(frozenset({1, 2})), GlueVector(frozenset({3, 4})))


def test_complement_gives_same_point_set():
    base = make("L:2d=8")
    root = base.root()
    o1 = overlattice(base, GlueVector(frozenset({1, 2, 3, 4})).glue_class(root))
    o2 = overlattice(base, GlueVector(frozenset({5, 6, 7, 8})).glue_class(root))
    assert same_lattice(o1, o2)


def test_overlattice_matches_make_lprime():
    for d in (2, 4, 6, 8):
        base = make(f"L:2d={2*d}")
        glue = GlueVector(frozenset(canonical_glue_support(d))).glue_class(base.root())
        over = overlattice(base, glue)
        assert same_lattice(over, make(f"L':2d={2*d}"))
        assert abs(det(over.gram)) * 4 == abs(det(base.gram))


def test_overlattice_rejects_parity_failure():
    base = make("L:2d=6")
    glue = GlueVector(frozenset({1, 2})).glue_class(base.root())
    with pytest.raises(ValueError, match="evenness failure"):
        overlattice(base, glue)


def test_overlattice_rejects_existing_point():
    base = make("L:2d=6")
    with pytest.raises(ValueError, match="already in lattice"):
        overlattice(base, base.root().basis_vector(0))


def test_overlattice_rejects_non_half_point():
    base = make("L:2d=6")
    bad = base.root().vector([Fraction(1, 3)] + [0] * 8)
    with pytest.raises(ValueError):
        overlattice(base, bad)


def test_nikulin_sublattice_primitive_in_families():
    for label in ("L:2d=6", "L':2d=8"):
        ns = make(label)
        nik = nikulin_sublattice(ns)
        assert nik.gram == make("N").gram
        assert is_primitive(ns, nik)


def test_k3_embedding_odd_and_even_n():
    rec2 = k3_embedding(parse_family("M':2d'=4"))  # n = 1
    assert rec2.m_squared == 4
    assert norm(rec2.alpha) == -2
    assert rec2.primitive
    rec4 = k3_embedding(parse_family("M':2d'=8"))  # n = 2
    assert rec4.m_squared == 8
    assert norm(rec4.alpha) == -4
    assert rec4.primitive
    # u = e1 + 2 f1 for n = 2
    assert rec4.u.root_coords()[:2] == (1, 2)
    # v = (0, alpha, -alpha) is anti-diagonal with square 2*alpha^2
    assert norm(rec4.v_vector) == 2 * norm(rec4.alpha)
    assert contains(anti_diagonal_e8(k3_lattice()), rec4.v_vector)
    # the glue (M+v)/2 = (u, alpha, 0) has integral K3 coordinates
    assert rec4.glue.denominator == 1
    assert rec4.glue == (rec4.m_vector + rec4.v_vector) / 2


def test_k3_embedding_matches_family_gram():
    for dp in (2, 4, 6):
        rec = k3_embedding(parse_family(f"M':2d'={2*dp}"))
        assert abs(det(rec.ns_copy.gram)) == abs(det(make(f"M':2d'={2*dp}").gram))
        assert signature(rec.ns_copy.gram) == Signature(1, 8, 0)


def test_k3_embedding_rejects_other_kinds():
    with pytest.raises(ValueError, match="M' families only"):
        k3_embedding(parse_family("L:2d=6"))


def test_parse_divisor():
    ns = make("L:2d=6")
    d = parse_divisor(ns, "L-Nhat")
    assert norm(d) == 2
    d = parse_divisor(ns, "2L-Nhat")
    assert norm(d) == 20
    d = parse_divisor(ns, "L-N1-N2-N3-N4")
    assert norm(d) == -2
    nsp = make("L':2d=8")
    d = parse_divisor(nsp, "(L-N1-N2-N3-N4)/2")
    assert norm(d) == 0
    assert contains(nsp, d)
    l1 = parse_divisor(nsp, "L1")
    assert l1 == d


def test_parse_divisor_l1_l2_split_by_parity():
    ns12 = make("L':2d=12")  # d = 6, d/2 odd: L1 = (L-N1-N2)/2
    l1 = parse_divisor(ns12, "L1")
    assert norm(l1) == 2
    ns16 = make("L':2d=16")  # d = 8, d/2 even: L1 = (L-N1-..-N4)/2
    l1 = parse_divisor(ns16, "L1")
    assert norm(l1) == 2


def test_parse_divisor_errors():
    ns = make("L:2d=6")
    for bad in ("", "L+", "Q", "L-N9", "L N1"):
        with pytest.raises(ValueError):
            parse_divisor(ns, bad)
    with pytest.raises(ValueError, match="L' families"):
        parse_divisor(ns, "L1")
