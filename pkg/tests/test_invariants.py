from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from castelnuovo.invariants import (
    BundleClass,
    c2_budget,
    canonical_degree,
    castelnuovo_class,
    castelnuovo_numbers,
    chow_intersect,
    double_cover_invariants,
    enumerate_type2,
    node_count,
    type2_node_count,
)


def brute_type2(g_max):
    """Direct transcription of the constraints, independent of the enumerator's loop order."""
    out = set()
    for g in range(1, g_max + 1):
        for p_g in range(3, 3 * g + 4):
            for q in range(g, g + 3):
                if q - g != 3 * g + 3 - p_g or 9 * p_g < 28 * g + 1:
                    continue
                for a in range(0, g + 1):
                    for b in range(a, g + 1):
                        for c in range(b, g + 1):
                            if a + b + c == p_g - 3:
                                out.add((g, p_g, q, (a, b, c)))
    return out


def test_chow_normalization():
    for abc in [(0, 0, 0), (0, 1, 1), (2, 3, 5)]:
        t, l = BundleClass.T(abc), BundleClass.L(abc)
        assert chow_intersect(t, t, l) == 1
        assert chow_intersect(l, l, t) == 0 and chow_intersect(l, l, l) == 0
        assert chow_intersect(t, t, t) == sum(abc)


def test_chow_rejects_mixed_bundles():
    with pytest.raises(ValueError):
        chow_intersect(BundleClass.T((0, 0, 1)), BundleClass.T((0, 1, 1)), BundleClass.L((0, 1, 1)))
    with pytest.raises(ValueError):
        BundleClass(1, 0, (2, 1, 0))
    with pytest.raises(ValueError):
        BundleClass.T((0, 0, 0)) + BundleClass.L((0, 0, 1))


classes = st.builds(lambda m, n: (m, n), st.integers(-6, 6), st.integers(-6, 6))


@given(x=classes, y=classes, z=classes, w=classes, k=st.integers(-5, 5),
       abc=st.lists(st.integers(0, 6), min_size=3, max_size=3).map(lambda v: tuple(sorted(v))))
def test_chow_symmetric_and_trilinear(x, y, z, w, k, abc):
    X, Y, Z, W = (BundleClass(m, n, abc) for m, n in (x, y, z, w))
    v = chow_intersect(X, Y, Z)
    assert v == chow_intersect(Y, X, Z) == chow_intersect(Z, Y, X) == chow_intersect(Y, Z, X)
    assert chow_intersect(X + W, Y, Z) == v + chow_intersect(W, Y, Z)
    assert chow_intersect(k * X, Y, Z) == k * v


def test_castelnuovo_numbers_examples():
    r = castelnuovo_numbers(0, 1, 1)
    assert (r.p_g, r.q, r.K2) == (5, 0, 8)
    r = castelnuovo_numbers(1, 1, 1)
    assert (r.p_g, r.K2) == (6, 11)
    r = castelnuovo_numbers(0, 0, 0)
    assert (r.p_g, r.K2) == (3, 2)
    assert castelnuovo_class((0, 1, 1)) == BundleClass(4, 0, (0, 1, 1))
    with pytest.raises(ValueError):
        castelnuovo_numbers(1, 0, 1)


def test_chow_agrees_with_castelnuovo_formula():
    for abc in combinations_with_replacement(range(6), 3):
        r = castelnuovo_numbers(*abc)
        t = BundleClass.T(abc)
        assert chow_intersect(t, t, castelnuovo_class(abc)) == r.K2 == 3 * sum(abc) + 2
        assert r.flags["chow_agrees"]


def test_double_cover_examples():
    assert double_cover_invariants(6, 0, 11, 32) == (6, 22)
    assert 22 == 6 * 6 - 14
    chi, _ = double_cover_invariants(4, 0, 5, 20)
    assert chi == 5 == 1 - 0 + 4
    assert double_cover_invariants(3, 0, 2, 0) == (8, 4)
    with pytest.raises(ValueError):
        double_cover_invariants(6, 0, 11, 30)


def test_node_count_examples():
    assert node_count(4, 0) == 20
    assert node_count(5, 2) == 32
    assert node_count(6, 1) == 32
    assert type2_node_count(1) == 32
    with pytest.raises(ValueError):
        node_count(2, 0)
    with pytest.raises(ValueError):
        node_count(4, -1)


def test_canonical_degree():
    assert canonical_degree(6, 22) == 2
    with pytest.raises(ValueError):
        canonical_degree(2, 4)


def test_c2_budget_examples():
    assert c2_budget(1, 6) == (73, 48, True)
    assert c2_budget(26, 81) == (748, 748, True)
    assert c2_budget(27, 84)[2] is False
    for g in range(1, 40):
        for p_g in range(3, 130):
            assert c2_budget(g, p_g)[2] == (9 * p_g >= 28 * g + 1)
    with pytest.raises(ValueError):
        c2_budget(0, 6)


def test_enumerator_matches_brute_force():
    recs = enumerate_type2(30)
    got = {(r.g, r.p_g, r.q, r.abc) for r in recs}
    assert len(got) == len(recs)
    assert got == brute_type2(30)


def test_enumerator_families():
    recs = enumerate_type2(30)
    fam = {f: [r for r in recs if r.family == f] for f in "abc"}
    assert max(r.g for r in fam["a"]) == 26
    assert max(r.g for r in fam["b"]) == 17
    assert max(r.g for r in fam["c"]) == 8
    assert all(r.abc == (r.g,) * 3 for r in fam["a"])
    assert all(r.abc == (r.g - 1, r.g, r.g) for r in fam["b"])
    assert all(r.abc in ((r.g - 1, r.g - 1, r.g), (r.g - 2, r.g, r.g)) for r in fam["c"])
    # (g-2, g, g) needs g >= 2, so family c) has 8 + 7 records
    assert (len(fam["a"]), len(fam["b"]), len(fam["c"])) == (26, 17, 15)
    assert len(recs) == 58
    assert not [r for r in recs if r.g > 26]
    assert enumerate_type2(30) == recs


def test_enumerator_records_are_consistent():
    for r in enumerate_type2(30):
        assert node_count(r.p_g, r.q) == type2_node_count(r.g) == r.nu
        assert 0 <= r.q - r.g == 3 * r.g + 3 - r.p_g
        assert sum(r.abc) == r.p_g - 3 and r.abc[2] <= r.g
        assert r.K2 == 6 * r.p_g - 14
        assert all(r.flags.values())
        d = r.to_json()
        assert list(d) == ["p_g", "q", "K2", "nu", "g", "abc", "family", "flags"]


def test_family_b_example_two():
    # g = 1 in family b) is the type (0,1,1) of the 32-node example with p_g = 5, q = 2
    r = [r for r in enumerate_type2(1) if r.family == "b"]
    assert [(x.p_g, x.q, x.abc) for x in r] == [(5, 2, (0, 1, 1))]
    with pytest.raises(ValueError):
        enumerate_type2(0)
