import itertools

import pytest

from ears.errors import IllegalTypeRank, NotARoot
from ears.finroot import (FiniteVerdict, build_finite, finite_min_gen_oracle,
                          finite_reflectable_oracle, highest_roots, weyl_order)

CLASSICAL = {  # (type, rank): (roots, short, long, |W|)
    ("A", 1): (2, 2, 0, 2), ("A", 2): (6, 6, 0, 6), ("A", 3): (12, 12, 0, 24),
    ("B", 2): (8, 4, 4, 8), ("B", 3): (18, 6, 12, 48), ("C", 3): (18, 12, 6, 48),
    ("D", 4): (24, 24, 0, 192), ("G", 2): (12, 6, 6, 12), ("F", 4): (48, 24, 24, 1152),
    ("E", 6): (72, 72, 0, 51840),
}


@pytest.mark.parametrize("key", sorted(CLASSICAL))
def test_root_counts(key):
    f = build_finite(*key)
    n, sh, lg, w = CLASSICAL[key]
    assert len(f.roots) == n
    assert len(f.short_roots) == sh and len(f.long_roots) == lg
    if n <= 48:
        assert weyl_order(f) == w
    for a in f.roots:
        for b in f.roots:
            assert f.reflect(a, b) in f.root_set


def test_examples():
    a1 = build_finite("A", 1)
    assert set(a1.roots) == {(1,), (-1,)}
    g2 = build_finite("G", 2)
    assert g2.k == 3
    b2 = build_finite("B", 2)
    assert b2.k == 2
    assert highest_roots(a1) == ((1,), None)


def test_b2_highest_roots_by_enumeration():
    f = build_finite("B", 2)
    # alpha_2 is the short simple root
    assert f.norm((0, 1)) == 2 and f.norm((1, 0)) == 4
    pos = [r for r in f.roots if all(x >= 0 for x in r)]
    top = {n: max((r for r in pos if f.norm(r) == n), key=sum) for n in (2, 4)}
    assert highest_roots(f) == (top[2], top[4]) == ((1, 1), (1, 2))


def test_g2_highest_long_root():
    f = build_finite("G", 2)
    pos = [r for r in f.roots if all(x >= 0 for x in r)]
    long_top = max((r for r in pos if f.norm(r) == 6), key=sum)
    assert highest_roots(f)[1] == long_top
    # here alpha_1 is the long simple root, so the highest long root reads 2a1 + 3a2
    assert long_top == (2, 3)


def test_illegal_rank():
    with pytest.raises(IllegalTypeRank):
        build_finite("B", 1)
    with pytest.raises(IllegalTypeRank):
        build_finite("D", 3)


def test_oracle_examples():
    a2 = build_finite("A", 2)
    assert finite_reflectable_oracle(a2, [(1, 0), (0, 1)]) is FiniteVerdict.Base
    assert finite_reflectable_oracle(a2, [(1, 0), (0, 1), (1, 1)]) is FiniteVerdict.SetNotBase
    b2 = build_finite("B", 2)
    assert finite_reflectable_oracle(b2, [(1, 0)]) is FiniteVerdict.NotSet
    with pytest.raises(NotARoot):
        finite_reflectable_oracle(a2, [(2, 0)])
    assert finite_min_gen_oracle(a2, [(1, 0), (0, 1)])
    assert not finite_min_gen_oracle(a2, [(1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize("key", [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3)])
def test_oracles_agree(key):
    f = build_finite(*key)
    ell = f.rank
    roots = sorted(f.roots)
    for size in range(1, ell + 2):
        for P in itertools.combinations(roots, size):
            base = finite_reflectable_oracle(f, P) is FiniteVerdict.Base
            assert base == finite_min_gen_oracle(f, P)
            if base:
                assert len(P) == ell
