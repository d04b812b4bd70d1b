import sys

sys.path.insert(0, "src")
from fancensus import completion as co, fans as fn

# Face fan of the cube: 8 rays, 6 face cones
cube_rays = [[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)]
idx = {tuple(r): i for i, r in enumerate(cube_rays)}


def face(axis, sign):
    return sorted(i for r, i in idx.items() if r[axis] == sign)


cube_cones = [face(a, s) for a in range(3) for s in (1, -1)]
cube = fn.fan_from_json({"dim": 3, "rays": cube_rays, "max_cones": cube_cones})
print("cube complete:", fn.is_complete_exact(cube))

removed = face(2, 1)  # the +z face cone
broken = fn.fan_from_json({"dim": 3, "rays": cube_rays,
                           "max_cones": [c for c in cube_cones
                                         if c != removed]})
print("broken complete:", fn.is_complete_exact(broken))
print("free segments:", co.free_boundary_segments(broken))

done = co.complete_fan_3d(broken, (0, 0, 1))
print("completed:", fn.is_complete_exact(done))
new = [c for c in done.max_cones if c not in broken.max_cones]
print("new cones:", new, "| count:", len(new))
print("simplicial new:", all(len(c) == 3 for c in new))
print("rays unchanged:", done.rays == broken.rays)
print("total max cones:", len(done.max_cones))

# already complete -> unchanged
same = co.complete_fan_3d(cube, (0, 0, 1))
print("already-complete returns same object:", same is cube)

# wrong v -> HypothesisViolated
try:
    co.complete_fan_3d(broken, (0, 0, -1))
except co.HypothesisViolated as e:
    print("wrong v ->", type(e).__name__)

# sideways v: passes per-ray check? rays (x,y,1): v=(1,0,0): pairing with
# (-1,±1,1) is negative -> still HypothesisViolated
try:
    co.complete_fan_3d(broken, (1, 0, 0))
except co.HypothesisViolated as e:
    print("sideways v ->", type(e).__name__)

# dimension check
try:
    co.complete_fan_3d(fn.fan_from_json(
        {"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]]}),
        (1, 1, 1))
except ValueError as e:
    print("dim reject ->", e)

# a fan with a 2D maximal cone poking into the hole:
# remove +z face, add the 2D cone on rays (1,1,1),(-1,-1,1)
with_flag = fn.fan_from_json({
    "dim": 3, "rays": cube_rays,
    "max_cones": [c for c in cube_cones if c != removed]
    + [sorted([idx[(1, 1, 1)], idx[(-1, -1, 1)]])]})
print("flag fan complete:", fn.is_complete_exact(with_flag))
done2 = co.complete_fan_3d(with_flag, (0, 0, 1))
print("flag completed:", fn.is_complete_exact(done2))
new2 = [c for c in done2.max_cones if c not in with_flag.max_cones]
print("flag new cones:", new2)
EOF = None
