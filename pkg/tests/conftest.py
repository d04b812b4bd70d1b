"""Shared, session-scoped fixtures for the expensive bundled ray systems."""

import pytest

from fancensus import distpoly as dp
from fancensus import enumeration as en
from fancensus import fans as fn
from fancensus import gale
from fancensus import gitscan as gs

DIM3_RAYS = [(1, 0, 0), (0, 1, 0), (2, 2, 3),
             (-1, -2, -2), (-2, -1, -2), (0, 0, 1)]
DIM4_RAYS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (-2, 1, 1, 1), (-1, -1, 2, 1), (2, -1, -4, -3)]


@pytest.fixture(scope="session")
def dim3_catalog():
    return dp.build_catalog(gale.gale_dual(DIM3_RAYS))


@pytest.fixture(scope="session")
def dim3_closed(dim3_catalog):
    return en.enumerate_closed(dim3_catalog)


@pytest.fixture(scope="session")
def dim3_maximal(dim3_catalog, dim3_closed):
    return en.maximal_collections(dim3_catalog, dim3_closed)


@pytest.fixture(scope="session")
def dim4_catalog():
    return dp.build_catalog(gale.gale_dual(DIM4_RAYS))


@pytest.fixture(scope="session")
def dim4_closed(dim4_catalog):
    return en.enumerate_closed(dim4_catalog)


@pytest.fixture(scope="session")
def dim4_maximal(dim4_catalog, dim4_closed):
    return en.maximal_collections(dim4_catalog, dim4_closed)


@pytest.fixture(scope="session")
def dim3_fans(dim3_catalog, dim3_maximal):
    """Fan (or Degenerate) for every maximal collection of the dim-3 system."""
    return {m: fn.fan_from_collection(DIM3_RAYS, dim3_catalog, m)
            for m in sorted(dim3_maximal)}


@pytest.fixture(scope="session")
def dim4_fans(dim4_catalog, dim4_maximal):
    return {m: fn.fan_from_collection(DIM4_RAYS, dim4_catalog, m)
            for m in sorted(dim4_maximal)}


@pytest.fixture(scope="session")
def dim3_scan(dim3_catalog):
    return gs.scan(DIM3_RAYS, dim3_catalog, depth=3)


@pytest.fixture(scope="session")
def dim4_scan(dim4_catalog):
    return gs.scan(DIM4_RAYS, dim4_catalog, depth=3)


@pytest.fixture(scope="session")
def dim3_split(dim3_scan, dim3_fans, dim3_catalog):
    """Distinct sampled collections, split by degeneracy of their fan."""
    nd, degenerate = set(), set()
    for m in dim3_scan.distinct_collections():
        f = dim3_fans.get(m)
        if f is None:
            f = fn.fan_from_collection(DIM3_RAYS, dim3_catalog, m)
        (degenerate if isinstance(f, fn.Degenerate) else nd).add(m)
    return nd, degenerate


@pytest.fixture(scope="session")
def dim4_split(dim4_scan, dim4_fans, dim4_catalog):
    nd, degenerate = set(), set()
    for m in dim4_scan.distinct_collections():
        f = dim4_fans.get(m)
        if f is None:
            f = fn.fan_from_collection(DIM4_RAYS, dim4_catalog, m)
        (degenerate if isinstance(f, fn.Degenerate) else nd).add(m)
    return nd, degenerate
