"""Fan reconstruction, predicates (simplicial/complete/coverage), products,
fan maximality, and the two coordinate-space lifts."""

import json
from importlib.resources import files

import pytest

from fancensus import distpoly as dp
from fancensus import enumeration as en
from fancensus import fans as fn
from fancensus import gale
from fancensus import geometry as geo

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
DIM4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (-2, 1, 1, 1), (-1, -1, 2, 1), (2, -1, -4, -3)]


def load_fixture(name: str) -> dict:
    return json.loads((files("fancensus") / "fixtures" / name).read_text())


@pytest.fixture(scope="module")
def p2_catalog():
    return dp.build_catalog(gale.gale_dual(P2_RAYS))


@pytest.fixture(scope="module")
def p2_fan(p2_catalog):
    # the collection holding only the saturated full-support entry: every
    # nonempty coordinate support is present, the origin is not
    members = 1 << p2_catalog.by_mask[(1 << 3) - 1]
    f = fn.fan_from_collection(P2_RAYS, p2_catalog, members)
    assert isinstance(f, fn.Fan)
    return f


@pytest.fixture(scope="module")
def p1_fan():
    return fn.fan_from_json(
        {"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]})


@pytest.fixture(scope="module")
def cube_fan():
    verts = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    cones = [[i for i, v in enumerate(verts) if v[axis] == sgn]
             for axis in range(3) for sgn in (1, -1)]
    return fn.fan_from_json(
        {"dim": 3, "rays": [list(v) for v in verts], "max_cones": cones})


@pytest.fixture(scope="module")
def sec5_obj():
    return load_fixture("sec5_fan.json")


@pytest.fixture(scope="module")
def sec5_fan(sec5_obj):
    return fn.fan_from_json(sec5_obj)


@pytest.fixture(scope="module")
def reichstein_fan(dim4_catalog):
    d = en.parse_descriptor("X∖(Z(c) ∪ Z(b,d,f) ∪ Z(a,e,g))")
    m = en.collection_from_descriptor(dim4_catalog, d)
    assert en.close(dim4_catalog, m) == en.Closed(m)
    f = fn.fan_from_collection(DIM4, dim4_catalog, m)
    assert isinstance(f, fn.Fan)
    return f


# ---------------------------------------------------------------------------
# construction from collections


def test_p2_collection_gives_projective_plane_fan(p2_fan):
    assert p2_fan.dim == 2
    assert set(p2_fan.rays) == set(P2_RAYS)
    idx = {r: i for i, r in enumerate(p2_fan.rays)}
    expect = {tuple(sorted((idx[a], idx[b])))
              for a, b in [((1, 0), (0, 1)), ((0, 1), (-1, -1)),
                           ((1, 0), (-1, -1))]}
    assert set(p2_fan.max_cones) == expect


def test_full_catalog_collection_is_degenerate(p2_catalog):
    full = (1 << len(p2_catalog.entries)) - 1
    out = fn.fan_from_collection(P2_RAYS, p2_catalog, full)
    assert isinstance(out, fn.Degenerate)
    assert out.zero_set == (0, 1, 2)


def test_p2_system_maximal_collections(p2_catalog):
    # hand-check: two entries (origin polytope, full polytope); the closed
    # collections are {full} and {origin, full}, and both are maximal
    assert [e.mask for e in p2_catalog.entries] == [0, 7]
    closed = en.enumerate_closed(p2_catalog)
    assert closed == {0b10, 0b11}
    assert en.maximal_collections(p2_catalog, closed) == {0b10, 0b11}


def test_reichstein_fan_has_nine_grid_cones(reichstein_fan):
    f = reichstein_fan
    # the ray through (0,0,1,0) is dropped: strict inclusion of the ray list
    assert (0, 0, 1, 0) not in f.rays
    assert len(f.rays) == 6
    cand = {tuple(r): i for i, r in enumerate(DIM4)}
    back = [cand[tuple(r)] for r in f.rays]
    got = {tuple(sorted(back[i] for i in c)) for c in f.max_cones}
    from itertools import combinations
    expect = {tuple(sorted(p + q)) for p in combinations((1, 3, 5), 2)
              for q in combinations((0, 4, 6), 2)}
    assert got == expect
    assert len(f.max_cones) == 9


def test_reichstein_two_collections_same_fan(dim4_catalog, reichstein_fan):
    d = en.parse_descriptor("X∖(Z(b,d,f) ∪ Z(c,d) ∪ Z(c,e) ∪ Z(a,e,g))")
    m = en.collection_from_descriptor(dim4_catalog, d)
    assert en.close(dim4_catalog, m) == en.Closed(m)
    f2 = fn.fan_from_collection(DIM4, dim4_catalog, m)
    assert f2 == reichstein_fan
    assert f2.key() == reichstein_fan.key()


def test_reichstein_dropped_ray_is_interior(reichstein_fan):
    # the dropped generator sits in the relative interior of one maximal cone
    c = geo.cone_from_generators([DIM4[0], DIM4[1], DIM4[5], DIM4[6]])
    assert geo.cone_contains(c, DIM4[2], mode="relative_interior")


def test_fan_from_json_roundtrip(sec5_obj, sec5_fan, p2_fan):
    assert fn.fan_from_json(fn.fan_to_json(sec5_fan)) == sec5_fan
    assert fn.fan_from_json(fn.fan_to_json(p2_fan)) == p2_fan
    assert [list(r) for r in sec5_fan.rays] == sec5_obj["rays"]


def test_fan_from_json_rejects_bad_input():
    with pytest.raises(ValueError):
        fn.fan_from_json({"dim": 2, "rays": [[2, 0]], "max_cones": [[0]]})
    with pytest.raises(ValueError):
        fn.fan_from_json({"dim": 2, "rays": [[0, 0]], "max_cones": [[0]]})
    with pytest.raises(ValueError):  # unused listed ray
        fn.fan_from_json(
            {"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0]]})
    with pytest.raises(ValueError):  # nested maximal cones
        fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1]],
                          "max_cones": [[0], [0, 1]]})
    with pytest.raises(fn.FanAxiomViolation):  # not strictly convex
        fn.fan_from_json({"dim": 1, "rays": [[1], [-1]],
                          "max_cones": [[0, 1]]})


def test_fan_axioms_reject_overlapping_cones():
    # the quadrant and the north wedge intersect in a 2-dim region that is a
    # face of neither, and neither cone contains the other
    with pytest.raises(fn.FanAxiomViolation):
        fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1], [1, 1], [-1, 1]],
                          "max_cones": [[0, 1], [2, 3]]})


def test_common_face_check_accepts_proper_neighbors():
    f = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [1, 2], [0, 1]],
                          "max_cones": [[0, 1], [1, 2]]})
    assert set(f.max_cones) == {(0, 1), (1, 2)}


# ---------------------------------------------------------------------------
# simpliciality


def test_simplicial_examples(p2_fan, cube_fan, reichstein_fan, sec5_fan):
    assert fn.is_simplicial(p2_fan)
    assert not fn.is_simplicial(cube_fan)  # square-based cones: 4 rays, dim 3
    assert fn.is_simplicial(reichstein_fan)
    assert fn.is_simplicial(sec5_fan)


# ---------------------------------------------------------------------------
# completeness (wall pairing) and the complement-search oracle


def assert_routes_agree(f):
    verdict = fn.is_complete_exact(f)
    point = fn.support_complement_point(f)
    if isinstance(verdict, fn.Complete):
        assert point is None
    else:
        assert point is not None
        assert not fn.in_support(f, point)
        assert not fn.in_support(f, verdict.witness)
    return verdict


def test_complete_examples(p2_fan, p1_fan, cube_fan):
    for f in (p2_fan, p1_fan, cube_fan):
        assert isinstance(assert_routes_agree(f), fn.Complete)


def test_sec5_fan_incomplete(sec5_fan):
    verdict = assert_routes_agree(sec5_fan)
    assert isinstance(verdict, fn.Incomplete)
    # the vertical direction misses every maximal cone
    assert not fn.in_support(sec5_fan, (0, 0, 0, 1))


def test_half_plane_fan_incomplete():
    f = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1], [-1, 0]],
                          "max_cones": [[0, 1], [1, 2]]})
    verdict = assert_routes_agree(f)
    assert isinstance(verdict, fn.Incomplete)
    assert verdict.witness[1] < 0


def test_low_dimensional_maximal_cone_incomplete():
    f = fn.fan_from_json({"dim": 2, "rays": [[1, 0]], "max_cones": [[0]]})
    verdict = assert_routes_agree(f)
    assert isinstance(verdict, fn.Incomplete)


def test_origin_only_and_empty_fans():
    origin2 = fn.fan_from_json({"dim": 2, "rays": [], "max_cones": [[]]})
    assert isinstance(assert_routes_agree(origin2), fn.Incomplete)
    empty = fn.fan_from_json({"dim": 2, "rays": [], "max_cones": []})
    assert isinstance(assert_routes_agree(empty), fn.Incomplete)
    # ambient dimension zero: the one-point space is covered by the zero cone
    assert isinstance(assert_routes_agree(fn.zero_fan()), fn.Complete)


def test_one_dimensional_fans():
    ray = fn.fan_from_json({"dim": 1, "rays": [[1]], "max_cones": [[0]]})
    verdict = assert_routes_agree(ray)
    assert isinstance(verdict, fn.Incomplete)
    assert verdict.witness[0] < 0
    line = fn.fan_from_json({"dim": 1, "rays": [[1], [-1]],
                             "max_cones": [[0], [1]]})
    assert isinstance(assert_routes_agree(line), fn.Complete)


def test_reichstein_fan_complete_by_both_routes(reichstein_fan):
    assert isinstance(assert_routes_agree(reichstein_fan), fn.Complete)


# ---------------------------------------------------------------------------
# coverage sampling


def test_coverage_complete_fans_exactly_one(p2_fan, cube_fan):
    assert fn.coverage_fraction(p2_fan, samples=20000, seed=0) == 1.0
    assert fn.coverage_fraction(cube_fan, samples=20000, seed=1) == 1.0


def test_coverage_sec5_below_one(sec5_fan):
    cov = fn.coverage_fraction(sec5_fan, samples=100000, seed=0)
    assert 0.0 < cov < 1.0


def test_coverage_half_plane_near_half():
    f = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1], [-1, 0]],
                          "max_cones": [[0, 1], [1, 2]]})
    cov = fn.coverage_fraction(f, samples=100000, seed=0)
    assert 0.45 < cov < 0.55


def test_coverage_deterministic_and_edge_cases(sec5_fan):
    a = fn.coverage_fraction(sec5_fan, samples=5000, seed=7)
    b = fn.coverage_fraction(sec5_fan, samples=5000, seed=7)
    assert a == b
    empty = fn.fan_from_json({"dim": 2, "rays": [], "max_cones": []})
    assert fn.coverage_fraction(empty, samples=10, seed=0) == 0.0
    assert fn.coverage_fraction(fn.zero_fan(), samples=5, seed=0) == 1.0
    with pytest.raises(ValueError):
        fn.coverage_fraction(empty, samples=0, seed=0)


# ---------------------------------------------------------------------------
# products


def test_p1_times_p1(p1_fan):
    f = fn.product_fan(p1_fan, p1_fan)
    assert f.dim == 2
    assert set(f.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(f.max_cones) == 4
    assert all(len(c) == 2 for c in f.max_cones)
    assert isinstance(fn.is_complete_exact(f), fn.Complete)


def test_p2_times_p1_simplicial(p2_fan, p1_fan):
    f = fn.product_fan(p2_fan, p1_fan)
    assert len(f.max_cones) == 6
    assert fn.is_simplicial(f)
    assert isinstance(fn.is_complete_exact(f), fn.Complete)


def test_product_with_point_fan_is_identity(p2_fan, sec5_fan):
    z = fn.zero_fan()
    assert fn.product_fan(p2_fan, z) == p2_fan
    assert fn.product_fan(z, p2_fan) == p2_fan
    assert fn.product_fan(sec5_fan, z) == sec5_fan


def test_product_simpliciality_is_conjunction(p2_fan, p1_fan, cube_fan,
                                              sec5_fan):
    pairs = [(p2_fan, p1_fan), (cube_fan, p1_fan), (p2_fan, cube_fan),
             (cube_fan, cube_fan), (sec5_fan, p1_fan)]
    for a, b in pairs:
        assert fn.is_simplicial(fn.product_fan(a, b)) == (
            fn.is_simplicial(a) and fn.is_simplicial(b))


def test_product_incomplete_factor_incomplete(sec5_fan, p1_fan):
    f = fn.product_fan(sec5_fan, p1_fan)
    assert isinstance(fn.is_complete_exact(f), fn.Incomplete)


# ---------------------------------------------------------------------------
# fan maximality on a ray set


def test_sec5_fan_is_maximal(sec5_fan, sec5_obj):
    assert isinstance(fn.is_maximal_fan(sec5_fan, sec5_obj["rays"]),
                      fn.MaximalFan)


def test_sec5_without_one_cone_extends_by_it(sec5_obj):
    rays = sec5_obj["rays"]
    seven = dict(sec5_obj,
                 max_cones=[c for c in sec5_obj["max_cones"]
                            if c != [1, 3, 5, 6]])
    f7 = fn.fan_from_json(seven)
    out = fn.is_maximal_fan(f7, rays)
    assert isinstance(out, fn.ExtendableFan)
    assert out.ray_indices == (1, 3, 5, 6)
    missing = geo.cone_from_generators([rays[i] for i in (1, 3, 5, 6)])
    assert geo.cones_equal(out.cone, missing)
    # re-inserting the cone reconstructs a valid fan equal to the original
    again = fn.fan_from_json(sec5_obj)
    assert again.key() == fn.fan_from_json(sec5_obj).key()


def test_complete_fans_are_maximal(p2_fan, p1_fan):
    assert isinstance(fn.is_maximal_fan(p2_fan, P2_RAYS), fn.MaximalFan)
    assert isinstance(fn.is_maximal_fan(p1_fan, [(1,), (-1,)]),
                      fn.MaximalFan)
    p11 = fn.product_fan(p1_fan, p1_fan)
    assert isinstance(
        fn.is_maximal_fan(p11, [(1, 0), (-1, 0), (0, 1), (0, -1)]),
        fn.MaximalFan)


def test_subfan_of_p2_is_extendable(p2_fan):
    sub = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1]],
                            "max_cones": [[0, 1]]})
    out = fn.is_maximal_fan(sub, P2_RAYS)
    assert isinstance(out, fn.ExtendableFan)


# ---------------------------------------------------------------------------
# coordinate-space lifts


def test_lift_fans_p2(p2_fan):
    td, hd = fn.lift_fans(p2_fan, P2_RAYS)
    expect = en.parse_descriptor("X∖(Z(a,b,c))")
    assert td == expect
    assert hd == expect


def test_lift_fans_reichstein(reichstein_fan):
    td, hd = fn.lift_fans(reichstein_fan, DIM4)
    assert td == en.parse_descriptor("X∖(Z(c) ∪ Z(b,d,f) ∪ Z(a,e,g))")
    assert hd == en.parse_descriptor(
        "X∖(Z(b,d,f) ∪ Z(c,d) ∪ Z(c,e) ∪ Z(a,e,g))")
    assert td != hd


def test_lift_fans_agree_when_all_rays_used(sec5_fan, sec5_obj):
    # with every candidate generating a ray of the fan, a generator inside a
    # cone must span a face of it, i.e. be extremal: the two lifts coincide
    td, hd = fn.lift_fans(sec5_fan, sec5_obj["rays"])
    assert td == hd


def test_lift_of_origin_fan_keeps_only_the_torus():
    z2 = fn.fan_from_json({"dim": 2, "rays": [], "max_cones": [[]]})
    td, hd = fn.lift_fans(z2, P2_RAYS)
    assert td == hd == en.parse_descriptor("X∖(Z(a) ∪ Z(b) ∪ Z(c))")


# ---------------------------------------------------------------------------
# classification record invariants


def test_classification_record_invariants(p2_fan):
    d = en.parse_descriptor("X∖(Z(a,b,c))")
    fn.ClassificationRecord(descriptor=d, nondegenerate=True, fan=p2_fan,
                            simplicial=True, complete=True, projective=True)
    fn.ClassificationRecord(descriptor=d, nondegenerate=False)
    with pytest.raises(ValueError):
        fn.ClassificationRecord(descriptor=d, nondegenerate=True, fan=p2_fan,
                                complete=False, projective=True)
    with pytest.raises(ValueError):
        fn.ClassificationRecord(descriptor=d, nondegenerate=False, fan=p2_fan)
    with pytest.raises(ValueError):
        fn.ClassificationRecord(descriptor=d, nondegenerate=True, fan=None)


# ---------------------------------------------------------------------------
# the five-ray product system: maximal fans are products of maximal factors


def test_product_system_maximal_fans(p2_fan, p1_fan):
    rays5 = [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)]
    cat5 = dp.build_catalog(gale.gale_dual(rays5))
    closed = en.enumerate_closed(cat5)
    mx = en.maximal_collections(cat5, closed)
    fans = {m: fn.fan_from_collection(rays5, cat5, m) for m in mx}
    nd = [f for f in fans.values() if isinstance(f, fn.Fan)]
    assert nd
    prod = fn.product_fan(p2_fan, p1_fan)
    assert {f.key() for f in nd} == {prod.key()}


# ---------------------------------------------------------------------------
# whole dim-3 census: fans, completeness double-check, coverage, table flags


def test_dim3_census_fans_and_flags(dim3_catalog, dim3_maximal):
    rays = [(1, 0, 0), (0, 1, 0), (2, 2, 3),
            (-1, -2, -2), (-2, -1, -2), (0, 0, 1)]
    rows = {r["descriptor"]: r
            for r in load_fixture("dim3_expected.json")["rows"]}
    fans = {m: fn.fan_from_collection(rays, dim3_catalog, m)
            for m in dim3_maximal}
    nd = {m: f for m, f in fans.items() if isinstance(f, fn.Fan)}
    assert len(fans) == 100
    assert len(nd) == 87
    prims = {tuple(r) for r in rays}
    for m, f in fans.items():
        desc = en.open_set_descriptor(dim3_catalog, m).render()
        row = rows[desc]
        assert row["nd"] == isinstance(f, fn.Fan)
        if not isinstance(f, fn.Fan):
            continue
        assert set(f.rays) <= prims
        assert row["simplicial"] == fn.is_simplicial(f)
        # every maximal nondegenerate fan of this system is complete, and the
        # wall-pairing verdict must agree with the complement-search oracle
        assert isinstance(fn.is_complete_exact(f), fn.Complete)
        assert fn.support_complement_point(f) is None


def test_dim3_census_coverage_all_one(dim3_catalog, dim3_maximal):
    rays = [(1, 0, 0), (0, 1, 0), (2, 2, 3),
            (-1, -2, -2), (-2, -1, -2), (0, 0, 1)]
    for m in dim3_maximal:
        f = fn.fan_from_collection(rays, dim3_catalog, m)
        if isinstance(f, fn.Fan):
            assert fn.coverage_fraction(f, samples=100000, seed=0) == 1.0
