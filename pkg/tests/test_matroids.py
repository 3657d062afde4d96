import pytest

from lineops.catalog import build, build_lines
from lineops.matroids import (Matroid3, MatroidError, extract_matroid,
                              flashing_incidence, matroid_from_json,
                              matroid_isomorphic, matroid_to_json,
                              reye_matroid)


def test_extract_examples():
    assert extract_matroid(build("generic", n=5)).flats == ()
    fano = extract_matroid(build("finite-plane", q=2))
    assert fano.flat_sizes() == [3] * 7
    pap = extract_matroid(build("pappus"))
    assert pap.flat_sizes() == [3] * 9


def test_flat_rules_enforced():
    with pytest.raises(MatroidError):
        Matroid3.from_flats(5, [(0, 1)])
    with pytest.raises(MatroidError):
        Matroid3.from_flats(5, [(0, 1, 2), (0, 1, 3)])
    with pytest.raises(MatroidError):
        Matroid3.from_flats(3, [(0, 1, 5)])


def test_non_bases():
    m = Matroid3.from_flats(5, [(0, 1, 2, 3)])
    assert m.non_bases() == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_isomorphism_identity_and_relabel():
    fano = extract_matroid(build("finite-plane", q=2))
    assert matroid_isomorphic(fano, fano) == tuple(range(7))
    relabel = Matroid3.from_flats(
        7, [tuple((i * 3 + 1) % 7 for i in f) for f in fano.flats])
    bij = matroid_isomorphic(fano, relabel)
    assert bij is not None
    assert {tuple(sorted(bij[i] for i in f)) for f in fano.flats} == \
        set(relabel.flats)


def test_isomorphism_negative():
    fano = extract_matroid(build("finite-plane", q=2))
    pap = extract_matroid(build("pappus"))
    assert matroid_isomorphic(fano, pap) is None  # different ground size
    # same sizes, different structure: pappus vs 9 lines with other flats
    other = Matroid3.from_flats(9, [(0, 1, 2), (3, 4, 5), (6, 7, 8),
                                    (0, 3, 6), (1, 4, 7), (2, 5, 8),
                                    (0, 4, 8), (2, 4, 6), (1, 3, 8)])
    got = matroid_isomorphic(pap, other)
    if got is not None:
        image = {tuple(sorted(got[i] for i in f)) for f in pap.flats}
        assert image == set(other.flats)


def test_gv13_flats_match_listed_non_bases():
    _, lines = build_lines("gv13")
    m = extract_matroid(lines)
    listed = [(1, 5, 7), (1, 8, 10), (1, 11, 12), (2, 5, 6), (2, 8, 9),
              (2, 11, 13), (3, 4, 5), (3, 6, 8), (3, 7, 11), (3, 9, 10),
              (3, 12, 13), (2, 4, 7, 10, 12), (1, 4, 6, 9, 13)]
    want = sorted(tuple(sorted(x - 1 for x in f)) for f in listed)
    assert sorted(m.flats) == want


def test_flashing_incidence_matrix():
    with pytest.raises(MatroidError):
        flashing_incidence(2)
    fi3 = flashing_incidence(3)
    assert fi3.shape == (10, 9)
    assert all(sum(row) in (3,) for row in fi3.rows[:-1])
    assert sum(fi3.rows[-1]) == 3
    fi4 = flashing_incidence(4)
    assert fi4.shape == (17, 12)
    assert fi4.as_matroid().flat_sizes() == [3] * 16 + [4]
    fi5 = flashing_incidence(5)
    assert fi5.shape == (26, 15)
    assert fi5.as_matroid().flat_sizes() == [3] * 25 + [5]


def test_flashing_realizations_match_incidence():
    from lineops.arrangements import lambda_op, sel_exact
    f0 = build("flashing3")
    f1 = lambda_op(sel_exact(2), sel_exact(3), f0)
    union9 = f0.union(f1)
    m9 = extract_matroid(union9)
    assert matroid_isomorphic(flashing_incidence(3).as_matroid(), m9) is not None
    _, l12 = build_lines("flashing4", part="all")
    m12 = extract_matroid(l12)
    assert matroid_isomorphic(flashing_incidence(4).as_matroid(), m12) is not None


def test_reye_not_isomorphic_to_flashing4():
    rey = reye_matroid()
    assert rey.flat_sizes() == [3] * 16
    _, l12 = build_lines("flashing4", part="all")
    m12 = extract_matroid(l12)
    assert matroid_isomorphic(rey, m12) is None


def test_isomorphism_transitive_on_relabelings():
    base = extract_matroid(build("finite-plane", q=2))
    perm1 = [(i * 2 + 3) % 7 for i in range(7)]
    perm2 = [(i * 4 + 1) % 7 for i in range(7)]
    m1 = Matroid3.from_flats(7, [tuple(perm1[i] for i in f) for f in base.flats])
    m2 = Matroid3.from_flats(7, [tuple(perm2[i] for i in f) for f in base.flats])
    ab = matroid_isomorphic(base, m1)
    bc = matroid_isomorphic(m1, m2)
    assert ab is not None and bc is not None
    composed = tuple(bc[ab[i]] for i in range(7))
    assert {tuple(sorted(composed[i] for i in f)) for f in base.flats} == \
        set(m2.flats)


def test_flat_pair_bound():
    from math import comb
    for name in ("pappus", "dual-hesse", "klein"):
        m = extract_matroid(build(name))
        assert sum(comb(len(f), 2) for f in m.flats) <= comb(m.ground, 2)


def test_matroid_json_roundtrip():
    m = extract_matroid(build("pappus"))
    assert matroid_from_json(matroid_to_json(m)) == m
