"""Oracle probe 3: dim-4 LP verdicts; random (d+2)-ray mini-census timing."""
import random
import time

from fancensus import distpoly as dp
from fancensus import enumeration as en
from fancensus import fans as fn
from fancensus import gale
from fancensus import geometry as geo
from fancensus import linalg as la
from fancensus import projectivity as pj

DIM4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (-2, 1, 1, 1), (-1, -1, 2, 1), (2, -1, -4, -3)]

t0 = time.time()
cat = dp.build_catalog(gale.gale_dual(DIM4))
closed = en.enumerate_closed(cat)
maximal = en.maximal_collections(cat, closed)
print(f"dim4 enumeration: {len(closed)} closed, {len(maximal)} maximal, "
      f"{time.time() - t0:.1f}s", flush=True)

t0 = time.time()
built = {m: fn.fan_from_collection(DIM4, cat, m) for m in maximal}
nd = {m: f for m, f in built.items() if isinstance(f, fn.Fan)}
print(f"dim4 fan builds: {len(nd)} ND of {len(built)}, "
      f"{time.time() - t0:.1f}s", flush=True)

t0 = time.time()
cert = 0
incomplete = 0
infeasible = 0
complete_count = 0
for m, f in nd.items():
    res = pj.strictly_convex_support_function(f)
    if isinstance(res, pj.SupportFunctionCertificate):
        cert += 1
        complete_count += 1
    elif res.incompleteness_witness is not None:
        incomplete += 1
    else:
        infeasible += 1
        complete_count += 1
print(f"dim4 LP round: {time.time() - t0:.1f}s; certificates {cert}, "
      f"incomplete {incomplete}, complete-but-infeasible {infeasible}",
      flush=True)


def random_spanning_rays(d, rng, bound=3):
    while True:
        pts = set()
        while len(pts) < d + 2:
            v = tuple(rng.randint(-bound, bound) for _ in range(d))
            if any(v):
                pts.add(la.primitive(v))
        rays = sorted(pts)
        full = geo.cone_from_generators(rays, ambient_dim=d)
        if not full.facet_normals and not full.span_equations:
            return rays


def complete_fans_of_system(rays, d):
    cat = dp.build_catalog(gale.gale_dual(rays))
    closed = en.enumerate_closed(cat)
    maximal = en.maximal_collections(cat, closed)
    out = []
    for m in maximal:
        f = fn.fan_from_collection(rays, cat, m)
        if isinstance(f, fn.Fan) and isinstance(fn.is_complete_exact(f),
                                                fn.Complete):
            out.append(f)
    return out


for d in (3, 4):
    rng = random.Random(1000 + d)
    t0 = time.time()
    total = 0
    keys = set()
    checked = 0
    n_sys = 5
    for _ in range(n_sys):
        rays = random_spanning_rays(d, rng)
        fs = complete_fans_of_system(rays, d)
        total += len(fs)
        for f in fs:
            keys.add((tuple(f.rays), f.key()))
            assert pj.d_plus_2_check(f) is True
            checked += 1
    print(f"d={d}: {n_sys} systems -> {total} complete fans "
          f"({len(keys)} distinct), all d+2 true, "
          f"{time.time() - t0:.1f}s", flush=True)
