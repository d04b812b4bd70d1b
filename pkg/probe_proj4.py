"""Timing probe: reduced convexity system on both bundled censuses."""
import random
import time

from fancensus import distpoly as dp
from fancensus import enumeration as en
from fancensus import fans as fn
from fancensus import gale
from fancensus import geometry as geo
from fancensus import linalg as la
from fancensus import projectivity as pj

DIM3 = [(1, 0, 0), (0, 1, 0), (2, 2, 3),
        (-1, -2, -2), (-2, -1, -2), (0, 0, 1)]
DIM4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (-2, 1, 1, 1), (-1, -1, 2, 1), (2, -1, -4, -3)]

for name, rays in (("dim3", DIM3), ("dim4", DIM4)):
    t0 = time.time()
    cat = dp.build_catalog(gale.gale_dual(rays))
    maximal = en.maximal_collections(cat, en.enumerate_closed(cat))
    nd = {}
    for m in sorted(maximal):
        f = fn.fan_from_collection(rays, cat, m)
        if isinstance(f, fn.Fan):
            nd[m] = f
    print(f"{name}: setup {time.time() - t0:.1f}s, {len(nd)} ND", flush=True)
    t0 = time.time()
    cert = incomplete = infeasible = 0
    worst = 0.0
    for m, f in nd.items():
        t1 = time.time()
        res = pj.strictly_convex_support_function(f)
        worst = max(worst, time.time() - t1)
        if isinstance(res, pj.SupportFunctionCertificate):
            cert += 1
        elif res.incompleteness_witness is not None:
            incomplete += 1
        else:
            infeasible += 1
    print(f"{name}: LP round {time.time() - t0:.1f}s (worst fan "
          f"{worst:.2f}s); certificates {cert}, incomplete {incomplete}, "
          f"complete-but-infeasible {infeasible}", flush=True)

# random mini-census timing with the exact-ray-count filter
import functools


def random_primitive_rays(d, count, rng, bound):
    pts = set()
    while len(pts) < count:
        v = tuple(rng.randint(-bound, bound) for _ in range(d))
        if any(v):
            pts.add(la.primitive(v))
    return sorted(pts)


def complete_fans_of_random_system(d, rng, bound=3):
    while True:
        rays = random_primitive_rays(d, d + 2, rng, bound)
        full = geo.cone_from_generators(rays, ambient_dim=d)
        if not full.facet_normals and not full.span_equations:
            break
    cat = dp.build_catalog(gale.gale_dual(rays))
    maximal = en.maximal_collections(cat, en.enumerate_closed(cat))
    out = []
    for m in sorted(maximal):
        f = fn.fan_from_collection(rays, cat, m)
        if (isinstance(f, fn.Fan) and len(f.rays) == d + 2
                and isinstance(fn.is_complete_exact(f), fn.Complete)):
            out.append(f)
    return out


rng = random.Random(20260813)
for d, n_systems in ((3, 24), (4, 12)):
    t0 = time.time()
    total = 0
    for _ in range(n_systems):
        for f in complete_fans_of_random_system(d, rng):
            assert pj.d_plus_2_check(f) is True
            total += 1
    print(f"d={d}: {n_systems} systems -> {total} complete (d+2)-ray fans, "
          f"all pass, {time.time() - t0:.1f}s", flush=True)
