import itertools

import pytest
from hypothesis import given, strategies as st

from ears.earoot import (Membership, Root, build_ears, canonical_base, configurations,
                         connectivity, ears_from_json, ears_from_residues, index_of,
                         parse_root_text, root_string, subsystem_RP, table4_base,
                         verify_axioms)
from ears.errors import (CapExceeded, DimensionMismatch, LatticeConstraintViolated, MissingZero,
                         NotConnected, StructureViolated, TwistOutOfRange)
from ears.lattice import quotient_invariants, lattice_semilattice, semilattice_validate

A = Root((1,), (0, 0))
S1 = Root((0,), (1, 0))
S2 = Root((0,), (0, 1))


def a1_ind0():
    return build_ears("A", 1, 2, 0, None, semilattice_validate(2, [[], [1], [2]]))


def test_build_examples():
    e = a1_ind0()
    assert index_of(e) == 0
    b2 = build_ears("B", 2, 2, 1, lattice_semilattice(1), lattice_semilattice(1))
    assert b2.k == 2 and b2.t == 1
    # <S>/<L> has order k^t, checked through the Smith form
    assert quotient_invariants(b2.lattice_of_S(), b2.lattice_of_L()) == [2]
    with pytest.raises(TwistOutOfRange):
        build_ears("G", 2, 2, 3)


def test_lattice_constraint_named():
    with pytest.raises(LatticeConstraintViolated) as err:
        build_ears("B", 3, 2, 0, None, semilattice_validate(2, [[], [1], [2]]))
    assert err.value.detail.get("clause")


def test_membership_examples():
    e = a1_ind0()
    assert e.contains(A + S1 + S2) is Membership.NotARoot
    assert e.contains(A + 2 * S1 + S2) is Membership.Short
    assert e.contains(Root((0,), (0, 0))) is Membership.Isotropic
    with pytest.raises(DimensionMismatch):
        e.contains(Root((1,), (0,)))


def test_index_examples():
    assert index_of(build_ears("A", 1, 2, 0, None, lattice_semilattice(2))) == 1
    assert index_of(a1_ind0()) == 0
    for code, ell in (("A", 3), ("D", 4), ("F", 4), ("G", 2)):
        assert index_of(build_ears(code, ell, 2, 0)) == 0


def labels(P):
    return sorted(p.label() for p in P)


def test_canonical_base_examples():
    assert labels(canonical_base(a1_ind0(), "table4")) == sorted(["a1", "s1-a1", "s2-a1"])
    e3 = build_ears("A", 1, 3, 0, None, lattice_semilattice(3))
    P = canonical_base(e3)
    assert len(P) == 8 and index_of(e3) + 1 + 3 == 8
    g2 = build_ears("G", 2, 2, 1)
    P4, note = table4_base(g2)
    assert note == "literal"
    assert labels(P4) == sorted(["a1", "a2", "s1-a2", "s2-a1"])


def test_root_string_examples():
    e = a1_ind0()
    assert root_string(e, A, A) == (2, 0)
    assert root_string(e, A, S1 - A) == (0, 2)
    b2 = build_ears("B", 2, 1, 0)
    short, long_ = Root((0, 1), (0,)), Root((1, 0), (0,))
    d, u = root_string(b2, short, long_)
    assert d - u == -2
    with pytest.raises(CapExceeded):
        root_string(e, A, S1, cap=0)


def test_connectivity_examples():
    e = a1_ind0()
    assert connectivity([A], e)
    assert connectivity([A, S1 - A], e)
    d4 = build_ears("D", 4, 1)
    a1, a4 = Root((1, 0, 0, 0), (0,)), Root((0, 0, 0, 1), (0,))
    assert not connectivity([a1, a4], d4)


def test_subsystem_examples():
    e = build_ears("A", 2, 2, 0)
    roots, info = subsystem_RP(e, [Root((1, 0), (0, 0)), Root((0, 1), (0, 0))], box=2)
    assert info["nullity_in_box"] == 0 and info["type"] == "A2" and len(roots) == 6
    roots, info = subsystem_RP(a1_ind0(), [A, S1 - A], box=3)
    assert info["nullity_in_box"] == 1
    roots, info = subsystem_RP(a1_ind0(), canonical_base(a1_ind0()), box=3)
    assert info["inner_box_complete"]
    with pytest.raises(NotConnected):
        subsystem_RP(build_ears("D", 4, 1), [Root((1, 0, 0, 0), (0,)), Root((0, 0, 0, 1), (0,))])


def test_json_round_trip():
    e = ears_from_json({"type": "B", "rank": 3, "nu": 2, "t": 1,
                        "S1": {"nu": 1, "supp": [[], [1]]}, "S2": {"nu": 1, "supp": [[], [1]]}})
    assert ears_from_json(e.to_json()).invariants() == e.invariants()
    assert parse_root_text("1;0,1") == A + S2
    with pytest.raises(DimensionMismatch):
        parse_root_text("1;0", 1, 2)


def test_mutations_rejected_with_clause():
    with pytest.raises(MissingZero):
        semilattice_validate(2, [[1], [2]])
    # short classes: everything; long classes: 2Z only in the first coordinate -> misses kS
    full = frozenset(itertools.product(range(4), repeat=2))
    bad_L = frozenset(v for v in full if v[0] % 4 == 0 and v[1] % 2 == 0)
    with pytest.raises(StructureViolated) as err:
        ears_from_residues("B", 2, 2, full, bad_L)
    assert err.value.detail["clause"] == "kS+L=L"


ALL_SYSTEMS = [e for code, ell in (("A", 1), ("B", 2), ("B", 3), ("C", 3), ("G", 2), ("F", 4), ("A", 2), ("D", 4))
               for nu in (1, 2) for e in configurations(code, ell, nu)]


@pytest.mark.parametrize("e", ALL_SYSTEMS[::3], ids=lambda e: f"{e.name}-nu{e.nu}-t{e.t}")
def test_axioms_hold_on_builds(e):
    rep = verify_axioms(e, box=2, samples=300)
    assert rep.ok, rep.details


def test_canonical_base_cardinality_everywhere():
    for code, ell in (("A", 1), ("B", 2), ("B", 3), ("C", 3), ("F", 4), ("G", 2)):
        for nu in (1, 2, 3):
            for e in configurations(code, ell, nu):
                assert len(canonical_base(e)) == index_of(e) + e.ell + e.nu


def test_twist_index_everywhere():
    for code, ell in (("B", 2), ("B", 3), ("C", 3), ("F", 4), ("G", 2)):
        for e in configurations(code, ell, 2):
            inv = quotient_invariants(e.lattice_of_S(), e.lattice_of_L())
            total = 1
            for d in inv:
                total *= d
            assert total == e.k ** e.t


def test_both_lengths_in_every_non_simply_laced_base():
    for code, ell in (("B", 2), ("B", 3), ("C", 3), ("F", 4), ("G", 2)):
        for nu in (1, 2):
            for e in configurations(code, ell, nu):
                P = canonical_base(e)
                assert any(e.is_short(p) for p in P) and any(not e.is_short(p) for p in P)


root_strategy = st.tuples(st.sampled_from([-1, 0, 1]), st.integers(-3, 3), st.integers(-3, 3))


@given(root_strategy, root_strategy)
def test_reflection_closure_and_partition(a, b):
    e = a1_ind0()
    alpha, beta = Root(a[:1], a[1:]), Root(b[:1], b[1:])
    kinds = [e.contains(beta) is m for m in Membership]
    assert sum(kinds) == 1
    if e.contains(alpha).nonisotropic and beta in e:
        image = e.reflect(alpha, beta)
        assert image in e
        assert e.contains(image) is e.contains(beta)
