import json
import random
from pathlib import Path

import pytest

from fancensus import distpoly as dp
from fancensus import enumeration as en
from fancensus.enumeration import Closed, NotSubset, OpenSetDescriptor, Rejected

TRI = [(1, 0), (0, 1), (1, 1)]            # 8 catalog entries, no rejections
QUAD = [(1, 0), (0, 1), (1, 1), (2, 1)]   # 14 catalog entries, no rejections
INC3D = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (3, 1, 0), (1, 3, 0)]  # 58 bad pairs

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "fancensus" / "fixtures"


def naive_is_closed(cat, mask):
    """Quadratic reference predicate, written independently of close()."""
    n = len(cat.entries)
    present = [i for i in range(n) if mask >> i & 1]
    for i in present:
        mi = cat.entries[i].mask
        for j in range(n):
            if cat.entries[j].mask & mi == mi and not mask >> j & 1:
                return False
    for a in present:
        for b in present:
            if b < a:
                continue
            kind, tgt = dp.intersection_class(cat, a, b)
            if kind == dp.INCOMPATIBLE:
                return False
            if kind == dp.MUST_CONTAIN and not mask >> tgt & 1:
                return False
    return True


def brute_closed_sets(cat):
    n = len(cat.entries)
    return {m for m in range(1, 1 << n) if naive_is_closed(cat, m)}


def naive_close(cat, seed_mask):
    """Reference fixpoint by repeated full passes; None when forced bad."""
    n = len(cat.entries)
    cur = seed_mask
    while True:
        nxt = cur
        for i in range(n):
            if not cur >> i & 1:
                continue
            mi = cat.entries[i].mask
            for j in range(n):
                if cat.entries[j].mask & mi == mi:
                    nxt |= 1 << j
            for j in range(n):
                if not cur >> j & 1:
                    continue
                kind, tgt = dp.intersection_class(cat, i, j)
                if kind == dp.INCOMPATIBLE:
                    return None
                if kind == dp.MUST_CONTAIN:
                    nxt |= 1 << tgt
        if nxt == cur:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# close()

def test_close_on_two_entry_catalog_by_hand():
    cat = dp.build_catalog([(1,), (1,), (1,)])
    assert len(cat.entries) == 2
    # the full segment forces nothing else
    assert en.close(cat, [1]) == Closed(members=0b10)
    # the origin entry pulls in every entry containing it
    assert en.close(cat, [0]) == Closed(members=0b11)
    assert en.close(cat, 0b11) == Closed(members=0b11)


def test_close_accepts_mask_or_indices():
    cat = dp.build_catalog(TRI)
    assert en.close(cat, 0b1000) == en.close(cat, [3])


def test_close_of_full_catalog_is_identity():
    cat = dp.build_catalog(TRI)
    full = (1 << len(cat.entries)) - 1
    assert en.close(cat, full) == Closed(members=full)


def test_close_matches_naive_fixpoint_on_toys():
    for betas in (TRI, QUAD):
        cat = dp.build_catalog(betas)
        n = len(cat.entries)
        rng = random.Random(7)
        seeds = [1 << i for i in range(n)]
        seeds += [rng.getrandbits(n) for _ in range(60)]
        for seed in seeds:
            want = naive_close(cat, seed)
            got = en.close(cat, seed)
            if want is None:
                assert isinstance(got, Rejected)
            else:
                assert got == Closed(members=want)


def test_close_rejects_incompatible_pair():
    cat = dp.build_catalog(INC3D)
    i = cat.by_mask[cat.sat[0b00111]]
    j = cat.by_mask[cat.sat[0b11000]]
    got = en.close(cat, [i, j])
    assert isinstance(got, Rejected)
    assert got.pair == (min(i, j), max(i, j))
    # rejection is monotone under larger seeds
    for k in range(len(cat.entries)):
        assert isinstance(en.close(cat, [i, j, k]), Rejected)


def test_closure_operator_properties(dim3_catalog):
    cat = dim3_catalog
    n = len(cat.entries)
    rng = random.Random(0)
    for _ in range(120):
        a = rng.getrandbits(n) & rng.getrandbits(n) & rng.getrandbits(n)
        extra = rng.getrandbits(n) & rng.getrandbits(n) & rng.getrandbits(n)
        ca = en.close(cat, a)
        assert isinstance(ca, Closed)  # this system never rejects
        # extensive and idempotent
        assert ca.members & a == a
        assert en.close(cat, ca.members) == ca
        # monotone
        cb = en.close(cat, a | extra)
        assert cb.members & ca.members == ca.members


# ---------------------------------------------------------------------------
# enumerate_closed()

def test_enumerate_matches_brute_force_on_tri():
    cat = dp.build_catalog(TRI)
    assert en.enumerate_closed(cat) == brute_closed_sets(cat)


def test_enumerate_matches_brute_force_on_quad():
    cat = dp.build_catalog(QUAD)
    got = en.enumerate_closed(cat)
    assert got == brute_closed_sets(cat)
    assert len(got) == 38


def test_enumerate_on_rejecting_system_sound_and_stable():
    cat = dp.build_catalog(INC3D)
    got = en.enumerate_closed(cat)
    assert len(got) == 78
    i = cat.by_mask[cat.sat[0b00111]]
    j = cat.by_mask[cat.sat[0b11000]]
    bad = (1 << i) | (1 << j)
    for m in got:
        assert m & bad != bad
        assert naive_is_closed(cat, m)
    # closures of random seeds never land outside the enumerated family
    n = len(cat.entries)
    rng = random.Random(3)
    for _ in range(400):
        seed = rng.getrandbits(n) & rng.getrandbits(n) & rng.getrandbits(n)
        c = en.close(cat, seed)
        if isinstance(c, Closed) and c.members:
            assert c.members in got


def test_enumerate_excludes_empty_collection():
    cat = dp.build_catalog(TRI)
    assert 0 not in en.enumerate_closed(cat)


def test_enumerate_deterministic_across_jobs():
    cat = dp.build_catalog(QUAD)
    assert en.enumerate_closed(cat, jobs=1) == en.enumerate_closed(cat, jobs=2)


# ---------------------------------------------------------------------------
# is_saturated_in / maximal_collections

def test_is_saturated_requires_subset():
    cat = dp.build_catalog([(1,), (1,), (1,)])
    with pytest.raises(NotSubset):
        en.is_saturated_in(cat, 0b01, 0b10)


def test_is_saturated_trivial_and_dropped_face():
    cat = dp.build_catalog([(1,), (1,), (1,)])
    assert en.is_saturated_in(cat, 0b10, 0b10)
    # the origin entry is a face of the segment entry, present only above
    assert not en.is_saturated_in(cat, 0b10, 0b11)


def test_two_entry_catalog_maximal_collections():
    cat = dp.build_catalog([(1,), (1,), (1,)])
    closed = en.enumerate_closed(cat)
    assert closed == {0b10, 0b11}
    assert en.maximal_collections(cat, closed) == {0b10, 0b11}


def test_maximal_matches_full_superset_scan_on_toys():
    for betas in (TRI, QUAD, INC3D):
        cat = dp.build_catalog(betas)
        closed = sorted(en.enumerate_closed(cat))
        want = set()
        for m in closed:
            if not any(o != m and o & m == m and en.is_saturated_in(cat, m, o)
                       for o in closed):
                want.add(m)
        assert en.maximal_collections(cat, closed) == want


def test_maximal_parallel_agrees():
    cat = dp.build_catalog(INC3D)
    closed = en.enumerate_closed(cat)
    assert (en.maximal_collections(cat, closed, jobs=2)
            == en.maximal_collections(cat, closed))


# ---------------------------------------------------------------------------
# descriptors

def test_descriptor_for_whole_space_and_complement():
    cat = dp.build_catalog([(1,), (1,), (1,)])
    assert en.open_set_descriptor(cat, 0b11).render() == "X"
    d = en.open_set_descriptor(cat, 0b10)
    assert d == OpenSetDescriptor(forbidden=((1, 2, 3),))
    assert d.render() == "X∖(Z(a,b,c))"


def test_descriptor_groups_render_in_canonical_order():
    d = en.parse_descriptor("X∖(Z(b,f) ∪ Z(d) ∪ Z(a,c,e,f))")
    assert d.forbidden == ((4,), (2, 6), (1, 3, 5, 6))
    assert d.render() == "X∖(Z(d) ∪ Z(b,f) ∪ Z(a,c,e,f))"


def test_parse_descriptor_examples():
    d = en.parse_descriptor("X∖(Z(d) ∪ Z(a,c,e,f) ∪ Z(b,f))")
    assert set(d.forbidden) == {(4,), (1, 3, 5, 6), (2, 6)}
    assert en.parse_descriptor("X") == OpenSetDescriptor(forbidden=())
    # ASCII backslash accepted as the set-minus sign
    assert en.parse_descriptor("X\\(Z(a) ∪ Z(b,c))").forbidden == \
        ((1,), (2, 3))
    with pytest.raises(ValueError):
        en.parse_descriptor("Y∖(Z(a))")
    with pytest.raises(ValueError):
        en.parse_descriptor("X∖(W(a))")


def test_parse_render_round_trip():
    texts = ["X", "X∖(Z(a,b,c))", "X∖(Z(d) ∪ Z(b,f) ∪ Z(a,c,e,f))"]
    for t in texts:
        assert en.parse_descriptor(t).render() == t


def test_descriptor_collection_round_trip_on_toys():
    for betas in (TRI, QUAD, INC3D):
        cat = dp.build_catalog(betas)
        for m in en.enumerate_closed(cat):
            d = en.open_set_descriptor(cat, m)
            assert en.collection_from_descriptor(cat, d) == m
            assert en.parse_descriptor(d.render()) == d
