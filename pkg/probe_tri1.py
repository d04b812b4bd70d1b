import sys
from fractions import Fraction

sys.path.insert(0, "src")
from fancensus import triangulate as tr

F = Fraction


def pc(*pts):
    return tr.PolyChain(tuple(tr.point(p) for p in pts))


def show(tag, tri):
    pts = tri.points
    tris = [tuple(pts[i] for i in t) for t in tri.triangles]
    print(f"{tag}: {len(tri.triangles)} triangles, area2={tri.area2()}")
    for t in tris:
        print("   ", t)


# 1. triangle
t1 = tr.triangulate_polygon(pc((0, 0), (3, 0), (0, 3)))
show("triangle", t1)

# 2. convex quad
t2 = tr.triangulate_polygon(pc((0, 0), (4, 0), (5, 3), (1, 4)))
show("quad", t2)

# 3. L-hexagon
t3 = tr.triangulate_polygon(pc((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))
show("L-hexagon", t3)

# 4. notched square sweep
notched = pc((0, 0), (4, 0), (4, 4), (3, 4), (2, 1), (1, 4), (0, 4))
w = tr.closest_visible_node(notched, (0, 0))
print("notched square: closest_visible_node from (0,0) ->", w)
t4 = tr.triangulate_polygon(notched)
show("notched square", t4)

# 5. triangle adjacent-node case
w2 = tr.closest_visible_node(pc((0, 0), (3, 0), (0, 3)), (0, 0))
print("triangle: closest_visible_node from (0,0) ->", w2)

# 6. annulus
outer = [(0, 0), (6, 0), (6, 6), (0, 6)]
hole = [(2, 2), (4, 2), (4, 4), (2, 4)]
segs = [(outer[i], outer[(i + 1) % 4]) for i in range(4)] + \
       [(hole[i], hole[(i + 1) % 4]) for i in range(4)]
t6 = tr.triangulate_region(segs)
show("annulus", t6)
assert set(t6.points) <= {tr.point(p) for p in outer + hole}, "Steiner point!"

# 7. simple agreement
sq = pc((0, 0), (4, 0), (4, 4), (0, 4))
ta = tr.triangulate_polygon(sq)
tb = tr.triangulate_region([((0, 0), (4, 0)), ((4, 0), (4, 4)),
                            ((4, 4), (0, 4)), ((0, 4), (0, 0))])
sa = {frozenset(ta.points[i] for i in t) for t in ta.triangles}
sb = {frozenset(tb.points[i] for i in t) for t in tb.triangles}
print("simple agreement:", sa == sb, "| area match:", ta.area2() == tb.area2())

# 8. dangling attached segment
segs8 = [((0, 0), (4, 0)), ((4, 0), (4, 4)), ((4, 4), (0, 4)),
         ((0, 4), (0, 0)), ((0, 0), (2, 2))]
t8 = tr.triangulate_region(segs8)
show("dangling attached", t8)

# 9. dangling free segment
segs9 = [((0, 0), (4, 0)), ((4, 0), (4, 4)), ((4, 4), (0, 4)),
         ((0, 4), (0, 0)), ((1, 3), (2, 3))]
t9 = tr.triangulate_region(segs9)
show("dangling free", t9)

# 10. dangling tree with a fork, attached
segs10 = segs8 + [((2, 2), (3, 1)), ((2, 2), (2, 3))]
t10 = tr.triangulate_region(segs10)
show("dangling fork", t10)

# 11. error cases
try:
    tr.triangulate_region([((0, 0), (1, 0)), ((1, 0), (1, 1))])
except tr.UnboundedRegion as e:
    print("open polyline -> UnboundedRegion:", e)
try:
    tr.closest_visible_node(notched, (2, 1))
except tr.NotConvexNode as e:
    print("reflex node -> NotConvexNode:", e)
try:
    tr.triangulate_polygon(pc((0, 0), (1, 1), (2, 2)))
except tr.DegenerateInput as e:
    print("collinear -> DegenerateInput:", e)

# 12. pairwise disjoint interiors check on the annulus (exact)
def interiors_disjoint(tri):
    def overlap(t1, t2):
        # exact: triangles with disjoint interiors iff separating edge exists
        from itertools import product
        pts = tri.points
        A = [pts[i] for i in t1]
        B = [pts[i] for i in t2]
        for tri_pts, other in ((A, B), (B, A)):
            for i in range(3):
                a, b = tri_pts[i], tri_pts[(i + 1) % 3]
                c = tri_pts[(i + 2) % 3]
                s = tr._cross(a, b, c)
                if all(tr._cross(a, b, p) * s <= 0 for p in other):
                    return False
        return True
    for i in range(len(tri.triangles)):
        for j in range(i + 1, len(tri.triangles)):
            if overlap(tri.triangles[i], tri.triangles[j]):
                return False
    return True

for tag, tri in (("annulus", t6), ("dangling attached", t8),
                 ("dangling free", t9), ("dangling fork", t10),
                 ("notched", t4)):
    print(f"disjoint interiors [{tag}]:", interiors_disjoint(tri))
print("done")
