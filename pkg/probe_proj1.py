"""Oracle probe 1: small fixed fans for the projectivity module."""
import time
from fractions import Fraction

from fancensus import fans as fn
from fancensus import geometry as geo
from fancensus import linalg as la
from fancensus import projectivity as pj

P2 = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                       "max_cones": [[0, 1], [1, 2], [0, 2]]})
P1P1 = fn.fan_from_json({"dim": 2,
                         "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
                         "max_cones": [[0, 1], [1, 2], [2, 3], [3, 0]]})
PYR = fn.fan_from_json({"dim": 3,
                        "rays": [[1, 1, 1], [1, -1, 1], [-1, 1, 1],
                                 [-1, -1, 1], [0, 0, -1]],
                        "max_cones": [[0, 1, 2, 3], [0, 1, 4], [0, 2, 4],
                                      [1, 3, 4], [2, 3, 4]]})

print("== P2 support function ==")
res = pj.strictly_convex_support_function(P2)
print(type(res).__name__)
print("functionals:", res.functionals)
print("wall_slacks:", res.wall_slacks)

print("\n== P1xP1 support function ==")
res2 = pj.strictly_convex_support_function(P1P1)
print(type(res2).__name__, res2.functionals, res2.wall_slacks)

print("\n== incomplete fan (P2 minus one cone) ==")
half = fn.fan_from_json({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                         "max_cones": [[0, 1], [1, 2]]})
res3 = pj.strictly_convex_support_function(half)
print(type(res3).__name__, res3.reason, res3.incompleteness_witness,
      res3.farkas)

print("\n== pyramid big cone polytope ==")
p, ok = pj.big_cone_polytope(PYR)
print("verified:", ok)
print("vertices:", sorted(p.vertices))

print("\n== P2 big cone polytope ==")
p2, ok2 = pj.big_cone_polytope(P2)
print("verified:", ok2)
print("vertices:", sorted(p2.vertices))

print("\n== P1xP1 big cone -> HypothesisViolated? ==")
try:
    pj.big_cone_polytope(P1P1)
    print("NO EXCEPTION (bad)")
except pj.HypothesisViolated as e:
    print("HypothesisViolated:", e)

print("\n== d+2 checks ==")
print("P1xP1:", pj.d_plus_2_check(P1P1))
try:
    pj.d_plus_2_check(P2)
    print("P2: no exception (bad)")
except pj.PreconditionViolated as e:
    print("P2 raises PreconditionViolated:", e)
try:
    pj.d_plus_2_check(half)
except pj.PreconditionViolated as e:
    print("incomplete raises PreconditionViolated:", e)

print("\n== pyramid support function (non-simplicial cone) ==")
res4 = pj.strictly_convex_support_function(PYR)
print(type(res4).__name__)
if isinstance(res4, pj.SupportFunctionCertificate):
    print("slack min:", min(s for _, _, s in res4.wall_slacks))

print("\n== random complete 4-ray fans in R^2 ==")
import random


def random_complete_2d_fans(rng, count, bound=9):
    out = []
    while len(out) < count:
        rays = set()
        while len(rays) < 4:
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if v != (0, 0):
                rays.add(la.primitive(v))
        rays = list(rays)
        full = geo.cone_from_generators(rays, ambient_dim=2)
        if full.facet_normals or full.span_equations:
            continue

        def half(v):
            return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

        def cmp(a, b):
            if half(a) != half(b):
                return half(a) - half(b)
            cr = a[0] * b[1] - a[1] * b[0]
            return -1 if cr > 0 else 1

        import functools
        rays.sort(key=functools.cmp_to_key(cmp))
        f = fn.fan_from_json({"dim": 2, "rays": [list(r) for r in rays],
                              "max_cones": [[i, (i + 1) % 4]
                                            for i in range(4)]})
        assert isinstance(fn.is_complete_exact(f), fn.Complete)
        out.append(f)
    return out


t0 = time.time()
rng = random.Random(20260813)
fans2d = random_complete_2d_fans(rng, 300)
keys = {f.key() for f in fans2d}
verdicts = [pj.d_plus_2_check(f) for f in fans2d]
print(f"300 fans in {time.time() - t0:.2f}s, distinct keys {len(keys)}, "
      f"all true: {all(verdicts)}")
