"""Exact triangulation of polygonal regions without new vertices.

All coordinates are rationals and every predicate is exact.  The central
routine clips ears off a counterclockwise (weakly) simple closed polyline;
when no ear is available it splits the cycle along a diagonal found by an
exact rotational sweep from a convex node.  Regions whose boundary is not a
single simple loop — holes, or dangling segments attached to the boundary —
are reduced to the weakly simple case by doubling: each hole or dangling
tree is joined to the enclosing cycle through a bridge diagonal traversed
once in each direction, so triangle vertices are always input nodes.

Region model: the input segments decompose into vertex-disjoint simple
loops plus dangling trees.  Loops nest; insides of loops at even nesting
depth form the region, loops at odd depth bound holes.  Every dangling tree
must sit inside the region.  More entangled boundaries (loops sharing a
node, crossing segments) are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, Fraction]

_ZERO = Fraction(0)


class NotConvexNode(Exception):
    """The sweep origin is not a strictly convex node of the chain."""


class DegenerateInput(Exception):
    """The polyline has repeated nodes, zero-length edges, or zero area."""


class UnboundedRegion(Exception):
    """The described region is not bounded by a closed loop."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def point(p: Sequence) -> Point:
    if len(p) != 2:
        raise ValueError("points must be 2-dimensional")
    return (_fr(p[0]), _fr(p[1]))


@dataclass(frozen=True)
class PolyChain:
    """Cyclic list of rational 2D nodes; consecutive nodes are joined."""

    nodes: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes",
                           tuple(point(p) for p in self.nodes))

    def signed_area2(self) -> Fraction:
        """Twice the signed enclosed area (positive when counterclockwise)."""
        return _shoelace2(self.nodes)


@dataclass(frozen=True)
class Triangulation:
    """Triangles as index triples into the point pool ``points``."""

    points: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def area2(self) -> Fraction:
        """Twice the total triangle area."""
        total = Fraction(0)
        for a, b, c in self.triangles:
            total += abs(_cross(self.points[a], self.points[b],
                                self.points[c]))
        return total


# ---------------------------------------------------------------------------
# exact predicates


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return ((a[0] - o[0]) * (b[1] - o[1])
            - (a[1] - o[1]) * (b[0] - o[0]))


def _shoelace2(nodes: Sequence[Point]) -> Fraction:
    total = Fraction(0)
    for i, p in enumerate(nodes):
        q = nodes[(i + 1) % len(nodes)]
        total += p[0] * q[1] - p[1] * q[0]
    return total


def _between(p: Point, a: Point, b: Point) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment [a, b]."""
    return _cross(a, b, p) == 0 and _between(p, a, b)


def segments_intersect_improperly(a: Point, b: Point,
                                  c: Point, d: Point) -> bool:
    """True unless [a,b] and [c,d] meet at most in shared endpoints."""
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0) \
            and 0 not in (d1, d2, d3, d4):
        return True
    for p, u, v in ((a, c, d), (b, c, d), (c, a, b), (d, a, b)):
        if _on_segment(p, u, v) and (p not in (a, b) or p not in (c, d)):
            return True
    return False


def point_in_loop(p: Point, loop: Sequence[Point]) -> bool:
    """Strict interior test by exact even-odd crossing (p not on the loop)."""
    inside = False
    n = len(loop)
    for i in range(n):
        a, b = loop[i], loop[(i + 1) % n]
        if _on_segment(p, a, b):
            raise ValueError("point lies on the loop")
        if (a[1] > p[1]) != (b[1] > p[1]):
            t = (p[1] - a[1]) / (b[1] - a[1])
            if a[0] + t * (b[0] - a[0]) > p[0]:
                inside = not inside
    return inside


# ---------------------------------------------------------------------------
# visibility sweep


def _wedge_contains(u: Point, v: Point, w: Point, d: Point) -> bool:
    """Is direction d strictly inside the interior wedge at convex node v?

    The chain runs u -> v -> w counterclockwise, so the interior directions
    sweep strictly from (w - v) counterclockwise to (u - v)."""
    dw = (w[0] - v[0], w[1] - v[1])
    du = (u[0] - v[0], u[1] - v[1])
    return (dw[0] * d[1] - dw[1] * d[0] > _ZERO
            and d[0] * du[1] - d[1] * du[0] > _ZERO)


def _strictly_into(u: Point, v: Point, w: Point, d: Point) -> bool:
    """Does direction d point strictly into the region at the corner
    u -> v -> w of a counterclockwise boundary (any corner angle)?"""
    dw = (w[0] - v[0], w[1] - v[1])
    du = (u[0] - v[0], u[1] - v[1])
    turn = dw[0] * du[1] - dw[1] * du[0]  # > 0 convex, < 0 reflex
    along_du = (du[0] * d[1] - du[1] * d[0] == 0
                and du[0] * d[0] + du[1] * d[1] > 0)
    along_dw = (dw[0] * d[1] - dw[1] * d[0] == 0
                and dw[0] * d[0] + dw[1] * d[1] > 0)
    if along_du or along_dw:
        return False  # along a boundary edge, not strictly interior
    if turn > 0:
        return (dw[0] * d[1] - dw[1] * d[0] > 0
                and d[0] * du[1] - d[1] * du[0] > 0)
    if turn == 0:
        return dw[0] * d[1] - dw[1] * d[0] > 0
    # reflex: interior is everything outside the closed exterior wedge
    return not (du[0] * d[1] - du[1] * d[0] > 0
                and d[0] * dw[1] - d[1] * dw[0] > 0)


def _ray_segment_hit(origin: Point, d: Point, a: Point,
                     b: Point) -> Fraction | None:
    """Some t in (0, 1] with origin + t*d on [a, b], minimal when unique.

    Only the verdict "does [a, b] obstruct the open ray strictly before
    t = 1" matters to the caller, so a collinear overlap reports a value
    strictly below 1 whenever any part of the segment lies in the open
    ray interval (0, 1)."""
    e = (b[0] - a[0], b[1] - a[1])
    den = d[0] * e[1] - d[1] * e[0]
    w = (a[0] - origin[0], a[1] - origin[1])
    if den == 0:
        if w[0] * d[1] - w[1] * d[0] != 0:
            return None  # parallel, never meets
        dd = d[0] * d[0] + d[1] * d[1]
        ta = (w[0] * d[0] + w[1] * d[1]) / dd
        tb = ((b[0] - origin[0]) * d[0] + (b[1] - origin[1]) * d[1]) / dd
        lo, hi = min(ta, tb), max(ta, tb)
        if hi <= 0 or lo >= 1:
            return None
        if lo > 0:
            return lo
        # the overlap starts at or behind the origin and reaches past it
        return min(hi, Fraction(1)) / 2
    t = (w[0] * e[1] - w[1] * e[0]) / den
    s = (w[0] * d[1] - w[1] * d[0]) / den
    if 0 < t <= 1 and 0 <= s <= 1:
        return t
    return None


def _closest_visible(pts: Sequence[Point], cycle: Sequence[int],
                     k: int, closed_wedge: bool = False) -> int | None:
    """Position (into cycle) of the chosen visible node from position k.

    Exact rotational sweep: consider every other cycle position whose
    direction lies strictly inside the interior wedge at the convex node
    cycle[k]; the node is visible when no boundary edge obstructs its open
    segment.  Among visible nodes the one minimizing squared distance,
    then position index, wins; None when nothing is visible.

    With closed_wedge the wedge boundary directions join the sweep and the
    two edges incident to position k stop counting as obstructions, which
    admits the neighbors of k themselves (the diagonal then runs along the
    boundary instead of strictly inside)."""
    m = len(cycle)
    v = pts[cycle[k]]
    u = pts[cycle[(k - 1) % m]]
    w = pts[cycle[(k + 1) % m]]
    if _cross(u, v, w) <= 0:
        raise NotConvexNode(f"node {v} is not strictly convex")
    edges = [(pts[cycle[i]], pts[cycle[(i + 1) % m]])
             for i in range(m)
             if not (closed_wedge and i in (k, (k - 1) % m))]
    best = None
    for q in range(m):
        if q == k:
            continue
        pq = pts[cycle[q]]
        d = (pq[0] - v[0], pq[1] - v[1])
        if d == (_ZERO, _ZERO):
            continue
        if not closed_wedge:
            # The reversed diagonal must enter the region at the target
            # occurrence too; with doubled corridors the same coordinate
            # appears at several positions and only one of them faces
            # the diagonal.
            uq = pts[cycle[(q - 1) % m]]
            wq = pts[cycle[(q + 1) % m]]
            if not _strictly_into(uq, pq, wq, (-d[0], -d[1])):
                continue
        in_wedge = _wedge_contains(u, v, w, d)
        if closed_wedge and not in_wedge:
            dw = (w[0] - v[0], w[1] - v[1])
            du = (u[0] - v[0], u[1] - v[1])
            along = ((dw[0] * d[1] - dw[1] * d[0] == 0
                      and dw[0] * d[0] + dw[1] * d[1] > 0)
                     or (du[0] * d[1] - du[1] * d[0] == 0
                         and du[0] * d[0] + du[1] * d[1] > 0))
            in_wedge = along
        if not in_wedge:
            continue
        blocked = False
        for a, b in edges:
            t = _ray_segment_hit(v, d, a, b)
            if t is not None and t < 1:
                blocked = True
                break
        if blocked:
            continue
        dist2 = d[0] * d[0] + d[1] * d[1]
        key = (dist2, q)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def closest_visible_node(chain: PolyChain, v2: Sequence) -> Point:
    """The visible node selected by the exact sweep from convex node v2.

    The chain is normalized to counterclockwise orientation first.  The
    returned node spans, together with v2, an open diagonal inside the
    enclosed region; when no node lies strictly inside the wedge at v2
    (as on a triangle, where the ear is never blocked), the sweep widens
    to the wedge boundary and an adjacent node is returned."""
    target = point(v2)
    nodes = list(chain.nodes)
    if _shoelace2(nodes) < 0:
        nodes.reverse()
    if target not in nodes:
        raise ValueError(f"{target} is not a node of the chain")
    k = nodes.index(target)
    order = list(range(len(nodes)))
    pos = _closest_visible(nodes, order, k)
    if pos is None:
        pos = _closest_visible(nodes, order, k, closed_wedge=True)
    if pos is None:
        raise AssertionError("no node is visible from the wedge")
    return nodes[pos]


# ---------------------------------------------------------------------------
# ear clipping


def _ear_ok(pts: Sequence[Point], cycle: Sequence[int], k: int) -> bool:
    """May the corner at position k be clipped from the (weakly) simple
    counterclockwise cycle?

    Conservative exact test: the corner must turn left; no other cycle
    position may carry the apex coordinate or sit inside the closed
    corner triangle; no cycle edge may coincide with or improperly cross
    the closing diagonal."""
    m = len(cycle)
    a = pts[cycle[(k - 1) % m]]
    b = pts[cycle[k]]
    c = pts[cycle[(k + 1) % m]]
    if _cross(a, b, c) <= 0:
        return False
    for i in range(m):
        if i in ((k - 1) % m, k, (k + 1) % m):
            continue
        p = pts[cycle[i]]
        if p in (a, b, c):
            # A corner coordinate may be revisited by a doubled corridor;
            # any part of it poking into the ear is caught by the edge
            # tests against the diagonal below.
            continue
        if _in_closed_triangle(p, a, b, c):
            return False
    for i in range(m):
        p, q = pts[cycle[i]], pts[cycle[(i + 1) % m]]
        if {p, q} == {a, c}:
            return False  # the diagonal would lie on the boundary
        if segments_intersect_improperly(a, c, p, q):
            return False
    return True


def _in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    return (_cross(a, b, p) >= 0 and _cross(b, c, p) >= 0
            and _cross(c, a, p) >= 0)


def _ear_clip(pts: Sequence[Point], cycle: list[int],
              out: list[tuple[int, int, int]]) -> None:
    """Triangulate a counterclockwise weakly simple cycle of positive area,
    appending index triples to out; splits along a sweep diagonal whenever
    no ear passes the conservative test."""
    if len(cycle) == 3:
        if _cross(pts[cycle[0]], pts[cycle[1]], pts[cycle[2]]) <= 0:
            raise DegenerateInput("cycle of three nodes without area")
        out.append((cycle[0], cycle[1], cycle[2]))
        return
    for k in range(len(cycle)):
        if _ear_ok(pts, cycle, k):
            m = len(cycle)
            out.append((cycle[(k - 1) % m], cycle[k], cycle[(k + 1) % m]))
            rest = cycle[:k] + cycle[k + 1:]
            _ear_clip(pts, rest, out)
            return
    # No ear passed; split through a diagonal found by the sweep.
    m = len(cycle)
    for k in range(m):
        u, v, w = (pts[cycle[(k - 1) % m]], pts[cycle[k]],
                   pts[cycle[(k + 1) % m]])
        if _cross(u, v, w) <= 0:
            continue
        q = _closest_visible(pts, cycle, k)
        if q is None:
            continue
        lo, hi = min(k, q), max(k, q)
        first = cycle[lo:hi + 1]
        second = cycle[hi:] + cycle[:lo + 1]
        _ear_clip(pts, first, out)
        _ear_clip(pts, second, out)
        return
    raise DegenerateInput("no convex node admits an ear or a diagonal")


def triangulate_polygon(chain: PolyChain) -> Triangulation:
    """Triangulate the inside of a simple closed polyline.

    Exactly len(nodes) - 2 triangles on the original nodes; total
    triangle area equals the enclosed area."""
    nodes = list(chain.nodes)
    if len(nodes) < 3:
        raise DegenerateInput("a polygon needs at least three nodes")
    if len(set(nodes)) != len(nodes):
        raise DegenerateInput("repeated node in polygon")
    area2 = _shoelace2(nodes)
    if area2 == 0:
        raise DegenerateInput("polygon encloses no area")
    if area2 < 0:
        nodes.reverse()
        area2 = -area2
    for i in range(len(nodes)):
        if nodes[i] == nodes[(i + 1) % len(nodes)]:
            raise DegenerateInput("zero-length edge")
    out: list[tuple[int, int, int]] = []
    _ear_clip(nodes, list(range(len(nodes))), out)
    tri = Triangulation(tuple(nodes), tuple(out))
    assert len(tri.triangles) == len(nodes) - 2
    assert tri.area2() == area2
    return tri


# ---------------------------------------------------------------------------
# region decomposition: vertex-disjoint loops plus dangling trees


def _normalize_segments(segments) -> list[tuple[Point, Point]]:
    segs = []
    seen = set()
    for s in segments:
        a, b = point(s[0]), point(s[1])
        if a == b:
            raise DegenerateInput("zero-length segment")
        key = frozenset((a, b))
        if key in seen:
            raise DegenerateInput(f"duplicate segment {a}-{b}")
        seen.add(key)
        segs.append((a, b))
    return segs


def _validate_segments(segs: list[tuple[Point, Point]]) -> None:
    nodes = {p for s in segs for p in s}
    for i, (a, b) in enumerate(segs):
        for c, d in segs[i + 1:]:
            if segments_intersect_improperly(a, b, c, d):
                raise DegenerateInput(
                    f"segments {a}-{b} and {c}-{d} overlap or cross")
        for p in nodes:
            if p not in (a, b) and _on_segment(p, a, b):
                raise DegenerateInput(
                    f"node {p} lies inside segment {a}-{b}")


def _loops_and_trees(segs: list[tuple[Point, Point]]):
    """Split the segment graph into simple loops and dangling tree edges.

    Returns (loops, tree_adj): loops as node lists in traversal order, and
    the adjacency (node -> sorted neighbors) of the tree edges left after
    repeatedly stripping leaves.  Rejects graphs whose cycles share nodes."""
    adj: dict[Point, list[Point]] = {}
    for a, b in segs:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    degree = {p: len(nb) for p, nb in adj.items()}
    tree_edges: set[frozenset] = set()
    stack = [p for p, d in degree.items() if d == 1]
    while stack:
        p = stack.pop()
        if degree[p] != 1:
            continue
        for q in adj[p]:
            e = frozenset((p, q))
            if e in tree_edges:
                continue
            tree_edges.add(e)
            degree[p] -= 1
            degree[q] -= 1
            if degree[q] == 1:
                stack.append(q)
            break
    for p, d in degree.items():
        if d not in (0, 2):
            raise DegenerateInput(
                f"boundary loops are not vertex-disjoint at {p}")
    loops: list[list[Point]] = []
    visited: set[Point] = set()
    for start in adj:
        if degree[start] != 2 or start in visited:
            continue
        loop = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = None
            for q in adj[cur]:
                if frozenset((cur, q)) in tree_edges or q == prev:
                    continue
                nxt = q
                break
            if nxt is None:  # only the edge back to prev remains: length-2 cycle
                raise DegenerateInput("two-node cycle in boundary")
            if nxt == start:
                break
            loop.append(nxt)
            visited.add(nxt)
            prev, cur = cur, nxt
        if len(loop) < 3:
            raise DegenerateInput("two-node cycle in boundary")
        loops.append(loop)
    tree_adj: dict[Point, list[Point]] = {}
    for e in tree_edges:
        a, b = sorted(e)
        tree_adj.setdefault(a, []).append(b)
        tree_adj.setdefault(b, []).append(a)
    for p in tree_adj:
        tree_adj[p].sort()
    return loops, tree_adj


def _tree_components(tree_adj: dict[Point, list[Point]]) -> list[list[Point]]:
    comps = []
    seen: set[Point] = set()
    for start in sorted(tree_adj):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            p = queue.pop()
            for q in tree_adj[p]:
                if q not in seen:
                    seen.add(q)
                    comp.append(q)
                    queue.append(q)
        comps.append(sorted(comp))
    return comps


def _euler_tour(tree_adj: dict[Point, list[Point]], root: Point,
                comp: set[Point]) -> list[Point]:
    """Walk every tree edge of the component twice, starting and ending at
    root: the doubled corridor closing the dangling part into the cycle."""
    tour = [root]

    def walk(p: Point, parent: Point | None) -> None:
        for q in tree_adj[p]:
            if q == parent or q not in comp:
                continue
            tour.append(q)
            walk(q, p)
            tour.append(p)

    walk(root, None)
    if len(tour) < 3:
        raise DegenerateInput("dangling component without edges")
    return tour


def _bridge(host_pts: list[Point], guest_pts: list[Point],
            blockers: list[tuple[Point, Point]],
            nodes: set[Point]) -> tuple[Point, Point]:
    """Shortest host-to-guest diagonal meeting no segment and no node.

    Candidates are host/guest node pairs whose open segment crosses or
    touches none of the blocker segments (sharing an endpoint is fine) and
    passes through no other node; ties break by squared length, then by
    node order."""
    best = None
    for a in host_pts:
        for b in guest_pts:
            if a == b:
                continue
            clear = True
            for c, d in blockers:
                if {c, d} == {a, b} or segments_intersect_improperly(
                        a, b, c, d):
                    clear = False
                    break
            if clear:
                for p in nodes:
                    if p not in (a, b) and _on_segment(p, a, b):
                        clear = False
                        break
            if not clear:
                continue
            d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
            key = (d2, a, b)
            if best is None or key < best:
                best = key
    if best is None:
        raise DegenerateInput("no bridge diagonal is available")
    return best[1], best[2]


def triangulate_region(segments,
                       outer: PolyChain | None = None) -> Triangulation:
    """Triangulate the bounded region described by boundary segments.

    The segments must decompose into vertex-disjoint simple loops plus
    dangling trees inside the region; loop insides at even nesting depth
    belong to the region, odd-depth loops bound holes.  Holes and dangling
    trees are stitched to their enclosing loop with doubled bridge
    diagonals, so every triangle vertex is an input node.  When outer is
    given, its nodes must be exactly the outermost loop nodes; its edges
    are added to the segment set if missing."""
    segs = _normalize_segments(segments)
    if outer is not None:
        present = {frozenset((a, b)) for a, b in segs}
        on = list(outer.nodes)
        for i in range(len(on)):
            a, b = on[i], on[(i + 1) % len(on)]
            if a == b:
                raise DegenerateInput("zero-length edge in outer chain")
            if frozenset((a, b)) not in present:
                segs.append((a, b))
                present.add(frozenset((a, b)))
    _validate_segments(segs)
    loops, tree_adj = _loops_and_trees(segs)
    if not loops:
        raise UnboundedRegion("no closed loop bounds the region")

    depth = []
    for i, li in enumerate(loops):
        d = 0
        for j, lj in enumerate(loops):
            if i != j and point_in_loop(li[0], lj):
                d += 1
        depth.append(d)
    if outer is not None:
        outer_nodes = {p for i, l in enumerate(loops) if depth[i] == 0
                       for p in l}
        if set(outer.nodes) != outer_nodes:
            raise UnboundedRegion(
                "outer chain does not match the outermost boundary")

    all_nodes = {p for s in segs for p in s}
    all_loop_nodes = {p for l in loops for p in l}
    comps = _tree_components(tree_adj)
    claimed = [False] * len(comps)
    pool: list[Point] = []
    index: dict[Point, int] = {}

    def idx(p: Point) -> int:
        if p not in index:
            index[p] = len(pool)
            pool.append(p)
        return index[p]

    triangles: list[tuple[int, int, int]] = []
    total_area2 = Fraction(0)

    for i in sorted(range(len(loops)), key=lambda i: (depth[i], i)):
        if depth[i] % 2 == 1:
            continue  # bounds a hole; handled by its enclosing piece
        boundary = list(loops[i])
        if _shoelace2(boundary) < 0:
            boundary.reverse()
        piece_area2 = _shoelace2(boundary)
        hole_ids = [j for j in range(len(loops))
                    if depth[j] == depth[i] + 1
                    and point_in_loop(loops[j][0], loops[i])]

        def strictly_inside(p: Point) -> bool:
            try:
                return (point_in_loop(p, loops[i])
                        and all(not point_in_loop(p, loops[j])
                                for j in hole_ids))
            except ValueError:
                raise DegenerateInput(
                    f"dangling edge at {p} touches two boundary parts")

        cycle = [idx(p) for p in boundary]
        blockers = list(segs)

        def weave(host_pt: Point, insert_pts: list[Point]) -> None:
            """Insert the walk after the last occurrence of its host node."""
            nonlocal cycle
            hpos = max(h for h, x in enumerate(cycle)
                       if pool[x] == host_pt)
            cycle = (cycle[:hpos + 1] + [idx(p) for p in insert_pts]
                     + cycle[hpos + 1:])

        for j in hole_ids:
            hole = list(loops[j])
            if _shoelace2(hole) > 0:
                hole.reverse()  # holes run clockwise in the merged cycle
            piece_area2 -= abs(_shoelace2(hole))
            a, b = _bridge([pool[x] for x in cycle], hole, blockers,
                           all_nodes)
            host_pt, guest_pt = (a, b) if b in hole else (b, a)
            gpos = hole.index(guest_pt)
            rotated = hole[gpos:] + hole[:gpos]
            weave(host_pt, rotated + [guest_pt, host_pt])
            blockers.append((host_pt, guest_pt))

        cycle_points = {pool[x] for x in cycle}
        for t, comp in enumerate(comps):
            if claimed[t]:
                continue
            if any(p in all_loop_nodes and p not in cycle_points
                   for p in comp):
                continue  # anchored on some other piece's boundary
            anchors = [p for p in comp if p in cycle_points]
            free = [p for p in comp if p not in cycle_points]
            if not all(strictly_inside(p) for p in free):
                continue  # pokes out of this piece; not ours
            claimed[t] = True
            if anchors:
                root = anchors[0]
                weave(root, _euler_tour(tree_adj, root, set(comp))[1:])
            else:
                a, b = _bridge([pool[x] for x in cycle], comp, blockers,
                               all_nodes)
                host_pt, guest_pt = (a, b) if b in comp else (b, a)
                tour = _euler_tour(tree_adj, guest_pt, set(comp))
                weave(host_pt, tour + [host_pt])
                blockers.append((host_pt, guest_pt))

        piece_out: list[tuple[int, int, int]] = []
        _ear_clip(pool, cycle, piece_out)
        got = Fraction(0)
        for x, y, z in piece_out:
            got += abs(_cross(pool[x], pool[y], pool[z]))
        assert got == piece_area2, "triangulated area differs from region area"
        triangles.extend(piece_out)
        total_area2 += piece_area2

    if not all(claimed):
        raise DegenerateInput("dangling segments outside the region")
    tri = Triangulation(tuple(pool), tuple(triangles))
    assert tri.area2() == total_area2
    return tri
