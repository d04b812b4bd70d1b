"""Exact convex geometry: polytopes and cones over Q at desk scale.

Double descriptions are computed by brute-force facet enumeration over
subsets of generators — fine for the handful of dimensions (<= 4 ambient,
<= 3 weight space) and generator counts (<= 8ish) this package ever sees,
and trivially exact.  Cone construction is memoized by generator rays since
the same cones recur thousands of times across a census run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg as la
from .lp import EQ, GE, HalfSpace, Feasible, Infeasible, lp_feasible
from .linalg import Vec, fr, vec


class NotFullDimensional(Exception):
    pass


class NotStrictlyConvex(Exception):
    pass


class OriginNotInterior(Exception):
    pass


# ---------------------------------------------------------------------------
# affine / linear charts

def _span_chart(vectors: Sequence[Vec], n: int):
    """rref basis of span(vectors) plus pivot columns; coords(x) = x at pivots."""
    red, piv = la.rref(vectors) if vectors else ([], [])
    basis = [tuple(red[i]) for i in range(len(piv))]
    return basis, piv


def _coords(x: Sequence, basis, pivots) -> Vec:
    # valid only when x lies in the span; callers check via equations
    return tuple(fr(x[p]) for p in pivots)


def _pad(u: Sequence, pivots, n: int) -> Vec:
    out = [Fraction(0)] * n
    for val, p in zip(u, pivots):
        out[p] = fr(val)
    return tuple(out)


def _span_equations(basis: Sequence[Vec], n: int) -> list[Vec]:
    return la.nullspace(basis, ncols=n) if basis else la.nullspace([], ncols=n)


# ---------------------------------------------------------------------------
# polytopes

@dataclass(frozen=True)
class PolytopeRecord:
    vertices: tuple[Vec, ...]
    dim: int
    # inward facet description within the affine hull, in ambient coordinates:
    # x in P  iff  all equations hold and <n, x> >= o for every (n, o) in facets
    aff_equations: tuple[tuple[Vec, Fraction], ...] = field(default=(), compare=False)
    facets: tuple[tuple[Vec, Fraction], ...] = field(default=(), compare=False)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])


def hull_vertices(points: Sequence[Sequence]) -> PolytopeRecord:
    pts = []
    seen = set()
    n = None
    for p in points:
        v = vec(p)
        if n is None:
            n = len(v)
        elif len(v) != n:
            raise ValueError("dimension mismatch")
        if v not in seen:
            seen.add(v)
            pts.append(v)
    if not pts:
        raise ValueError("no points")

    p0 = pts[0]
    basis, piv = _span_chart([la.vsub(p, p0) for p in pts[1:]], n)
    coords = [(_coords(la.vsub(p, p0), basis, piv)) for p in pts]

    verts = []
    for i, p in enumerate(pts):
        if len(pts) == 1:
            verts.append(p)
            break
        others = [coords[j] for j in range(len(pts)) if j != i]
        if not _in_hull(coords[i], others):
            verts.append(p)
    return _record_from_vertex_list(verts, n)


def _record_from_vertex_list(verts: list[Vec], n: int) -> PolytopeRecord:
    """Build the record for points already known to be exactly the vertices."""
    verts = sorted(verts)
    vrec = tuple(verts)
    p0 = verts[0]
    basis, piv = _span_chart([la.vsub(p, p0) for p in verts[1:]], n)
    d = len(basis)
    eqs = []
    for u in _span_equations(basis, n):
        eqs.append((tuple(u), la.dot(u, p0)))
    facets = _polytope_facets(vrec, p0, basis, piv, d, n)
    return PolytopeRecord(vertices=vrec, dim=d, aff_equations=tuple(eqs),
                          facets=tuple(facets))


def _in_hull(p: Vec, others: list[Vec]) -> bool:
    if not others:
        return False
    d = len(p)
    cons = []
    for j in range(d):
        row = tuple(q[j] for q in others)
        if all(x == 0 for x in row):
            if p[j] != 0:
                return False
            continue
        cons.append(HalfSpace(row, p[j], EQ))
    cons.append(HalfSpace((Fraction(1),) * len(others), 1, EQ))
    for i in range(len(others)):
        e = [Fraction(0)] * len(others)
        e[i] = Fraction(1)
        cons.append(HalfSpace(tuple(e), 0, GE))
    return isinstance(lp_feasible(cons), Feasible)


def _polytope_facets(verts, p0, basis, piv, d, n):
    if d == 0:
        return []
    vcoords = [_coords(la.vsub(v, p0), basis, piv) for v in verts]
    facets = {}
    for idx in combinations(range(len(vcoords)), d):
        # hyperplane through these d points in the d-dim chart
        rows = [la.vsub(vcoords[i], vcoords[idx[0]]) for i in idx[1:]]
        ns = la.nullspace(rows, ncols=d)
        if len(ns) != 1:
            continue
        u = ns[0]
        off = la.dot(u, vcoords[idx[0]])
        pos = neg = False
        for c in vcoords:
            s = la.dot(u, c) - off
            pos |= s > 0
            neg |= s < 0
        if pos and neg:
            continue
        if neg:
            u, off = tuple(-x for x in u), -off
        # ambient pullback: <u, coords(x - p0)> >= off
        amb = _pad(u, piv, n)
        key = _canon_halfspace(amb, off + la.dot(amb, p0))
        facets[key] = key
    return sorted(facets.values())


def _canon_halfspace(normal: Vec, offset: Fraction):
    den = la.lcm_denominators([list(normal) + [offset]])
    ints = [int(x * den) for x in normal] + [int(offset * den)]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return (tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1]))


def in_polytope(p: PolytopeRecord, x: Sequence) -> bool:
    x = vec(x)
    for u, b in p.aff_equations:
        if la.dot(u, x) != b:
            return False
    return all(la.dot(u, x) >= b for u, b in p.facets)


def polytopes_equal(p: PolytopeRecord, q: PolytopeRecord) -> bool:
    return p.vertices == q.vertices


def vertices_from_hrep(equations, inequalities, n) -> list[Vec]:
    """All vertices of {x : eq holds, <u,x> >= b for (u,b) in inequalities}.

    Assumes the set is bounded (callers guarantee); returns [] when empty.
    """
    eq_rows = [list(u) for u, _ in equations]
    x0 = la.solve(eq_rows, [b for _, b in equations]) if equations else tuple(
        Fraction(0) for _ in range(n))
    if equations and x0 is None:
        return []
    null = la.nullspace(eq_rows, ncols=n) if equations else \
        [tuple(Fraction(1 if i == j else 0) for i in range(n)) for j in range(n)]
    dt = len(null)
    if dt == 0:
        x = x0
        ok = all(la.dot(u, x) >= b for u, b in inequalities)
        return [vec(x)] if ok else []
    # push inequalities to the chart: <u, x0 + N c> >= b; for a repeated
    # direction only the largest offset binds
    tightest: dict = {}
    for u, b in inequalities:
        row = tuple(la.dot(u, nv) for nv in null)
        off = b - la.dot(u, x0)
        if all(x == 0 for x in row):
            if off > 0:
                return []
            continue
        prim = la.primitive_of_rational(row)
        k = next(i for i, x in enumerate(row) if x != 0)
        scale = Fraction(prim[k]) / row[k]
        off = off * scale
        if prim not in tightest or tightest[prim] < off:
            tightest[prim] = off
    rows = [(vec(p), b) for p, b in tightest.items()]
    out = {}
    for idx in combinations(range(len(rows)), dt):
        sub = [rows[i][0] for i in idx]
        if la.rank(sub) != dt:
            continue
        c = la.solve(sub, [rows[i][1] for i in idx])
        if c is None:
            continue
        if all(la.dot(r, c) >= b for r, b in rows):
            x = vec(x0)
            for cj, nv in zip(c, null):
                x = la.vadd(x, la.vscale(cj, nv))
            out[x] = x
    return sorted(out.values())


def intersect_polytopes(p: PolytopeRecord, q: PolytopeRecord) -> PolytopeRecord | None:
    n = p.ambient_dim
    if n != q.ambient_dim:
        raise ValueError("dimension mismatch")
    eqs = list(p.aff_equations) + list(q.aff_equations)
    ineqs = list(p.facets) + list(q.facets)
    vs = vertices_from_hrep(eqs, ineqs, n)
    if not vs:
        return None
    return _record_from_vertex_list(vs, n)


def polytope_faces_vertexsets(p: PolytopeRecord) -> set[frozenset[int]]:
    """All nonempty faces as frozensets of vertex indices (improper included)."""
    nv = len(p.vertices)
    inc = []
    for u, b in p.facets:
        inc.append(frozenset(i for i, v in enumerate(p.vertices)
                             if la.dot(u, v) == b))
    faces = {frozenset(range(nv))}
    frontier = {frozenset(range(nv))}
    while frontier:
        nxt = set()
        for f in frontier:
            for facet in inc:
                g = f & facet
                if g and g not in faces:
                    faces.add(g)
                    nxt.add(g)
        frontier = nxt
    return faces


def support_function(p: PolytopeRecord, v: Sequence) -> Fraction:
    return max(la.dot(x, v) for x in p.vertices)


def origin_interior(points: Sequence[Sequence]) -> bool:
    hull = hull_vertices(points)
    n = hull.ambient_dim
    if hull.dim != n:
        raise NotFullDimensional(f"hull has dimension {hull.dim} < {n}")
    return all(b < 0 for _, b in hull.facets)


def dual_polytope(p: PolytopeRecord) -> PolytopeRecord:
    if not origin_interior(p.vertices):
        raise OriginNotInterior("0 is not an interior point")
    n = p.ambient_dim
    ineqs = [(tuple(-x for x in v), Fraction(-1)) for v in p.vertices]
    vs = vertices_from_hrep([], ineqs, n)
    return _record_from_vertex_list(vs, n)


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class ConeRecord:
    generators: tuple[Vec, ...]
    extremal_rays: tuple[la.IVec, ...]
    facet_normals: tuple[Vec, ...]
    lineality_basis: tuple[la.IVec, ...]
    span_equations: tuple[Vec, ...]
    dim: int

    @property
    def ambient_dim(self) -> int:
        if self.generators:
            return len(self.generators[0])
        return len(self.span_equations[0]) if self.span_equations else 0

    @property
    def pointed(self) -> bool:
        return not self.lineality_basis

    def key(self):
        return (self.lineality_basis, self.extremal_rays)


_CONE_CACHE: dict = {}


def cone_from_generators(gens: Sequence[Sequence], ambient_dim: int | None = None) -> ConeRecord:
    gvecs = [vec(g) for g in gens]
    if gvecs:
        n = len(gvecs[0])
        if any(len(g) != n for g in gvecs):
            raise ValueError("dimension mismatch")
    else:
        if ambient_dim is None:
            raise ValueError("empty generators need ambient_dim")
        n = ambient_dim
    nz = [g for g in gvecs if not la.is_zero(g)]
    rays = sorted({la.primitive_of_rational(g) for g in nz})
    key = (n, tuple(rays))
    hit = _CONE_CACHE.get(key)
    if hit is not None:
        return ConeRecord(generators=tuple(gvecs), extremal_rays=hit.extremal_rays,
                          facet_normals=hit.facet_normals,
                          lineality_basis=hit.lineality_basis,
                          span_equations=hit.span_equations, dim=hit.dim)
    rec = _build_cone(tuple(gvecs), rays, n)
    _CONE_CACHE[key] = rec
    return rec


def _build_cone(gvecs, rays, n) -> ConeRecord:
    if not rays:
        eye = [tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)]
        return ConeRecord(generators=gvecs, extremal_rays=(), facet_normals=(),
                          lineality_basis=(), span_equations=tuple(eye), dim=0)

    basis, piv = _span_chart([vec(r) for r in rays], n)
    d_span = len(basis)
    span_eqs = tuple(tuple(u) for u in _span_equations(basis, n))
    cg = [_coords(r, basis, piv) for r in rays]  # span-chart generator coords

    lin_idx = _lineality_indices(cg)
    if lin_idx:
        lin_basis_c, lin_piv = _span_chart([cg[i] for i in lin_idx], d_span)
    else:
        lin_basis_c, lin_piv = [], []
    dq_positions = [j for j in range(d_span) if j not in lin_piv]

    def project(c: Vec) -> Vec:
        # kill the lineality component (rref pivots), read remaining coords
        c = list(c)
        for row, p in zip(lin_basis_c, lin_piv):
            f = c[p]
            if f != 0:
                c = [x - f * y for x, y in zip(c, row)]
        return tuple(c[j] for j in dq_positions)

    qg = {}
    for i, c in enumerate(cg):
        pc = project(c)
        if not la.is_zero(pc):
            qg.setdefault(la.primitive_of_rational(pc), i)
    qgens = sorted(qg)  # pointed cone generators in the quotient chart
    dq = len(dq_positions)

    qfacets = _pointed_facets([vec(q) for q in qgens], dq)
    qext = _pointed_extremal([vec(q) for q in qgens], qfacets, dq)

    # lift facet normals: quotient -> span chart -> ambient
    facet_normals = []
    for u in qfacets:
        uspan = [Fraction(0)] * d_span
        for val, j in zip(u, dq_positions):
            uspan[j] = val
        for row, p in zip(lin_basis_c, lin_piv):
            uspan[p] = -sum(uspan[j] * row[j] for j in dq_positions)
        facet_normals.append(_pad(uspan, piv, n))
    facet_normals.sort()

    # lift extremal rays with zero lineality component (canonical representative)
    ext = []
    for q in qext:
        cspan = [Fraction(0)] * d_span
        for val, j in zip(q, dq_positions):
            cspan[j] = val
        amb = [Fraction(0)] * n
        for cj, b in zip(cspan, basis):
            for k in range(n):
                amb[k] += cj * b[k]
        ext.append(la.primitive_of_rational(amb))
    ext.sort()

    lin_amb = []
    for row in lin_basis_c:
        amb = [Fraction(0)] * n
        for cj, b in zip(row, basis):
            for k in range(n):
                amb[k] += cj * b[k]
        lin_amb.append(la.sign_normalized(la.primitive_of_rational(amb)))
    lin_amb.sort()

    return ConeRecord(generators=gvecs, extremal_rays=tuple(ext),
                      facet_normals=tuple(facet_normals),
                      lineality_basis=tuple(lin_amb), span_equations=span_eqs,
                      dim=d_span)


def _lineality_indices(cg: list[Vec]) -> list[int]:
    m = len(cg)
    d = len(cg[0])
    # quick exit: strictly separating functional exists iff the cone is pointed
    cons = [HalfSpace(g, 1, GE) for g in cg]
    if isinstance(lp_feasible(cons), Feasible):
        return []
    out = []
    for i in range(m):
        cons = [HalfSpace(tuple(cg[k][j] for k in range(m)), 0, EQ) for j in range(d)]
        e = [Fraction(0)] * m
        e[i] = Fraction(1)
        lam = [HalfSpace(tuple(1 if k == j else 0 for k in range(m)), 0, GE)
               for j in range(m)]
        cons.extend(lam)
        cons.append(HalfSpace(tuple(e), 1, GE))
        if isinstance(lp_feasible(cons), Feasible):
            out.append(i)
    return out


def _pointed_facets(qgens: list[Vec], dq: int) -> list[Vec]:
    if dq == 0:
        return []
    if dq == 1:
        s = 1 if qgens[0][0] > 0 else -1
        return [(Fraction(s),)]
    facets = {}
    for idx in combinations(range(len(qgens)), dq - 1):
        rows = [qgens[i] for i in idx]
        ns = la.nullspace(rows, ncols=dq)
        if len(ns) != 1:
            continue
        u = ns[0]
        pos = neg = False
        for g in qgens:
            s = la.dot(u, g)
            pos |= s > 0
            neg |= s < 0
        if pos and neg:
            continue
        if neg:
            u = tuple(-x for x in u)
        facets[la.primitive_of_rational(u)] = None
    return [vec(f) for f in facets]


def _pointed_extremal(qgens: list[Vec], qfacets: list[Vec], dq: int) -> list[Vec]:
    if dq == 0:
        return []
    if dq == 1:
        return [vec(la.primitive_of_rational(qgens[0]))]
    out = []
    for g in qgens:
        tight = [f for f in qfacets if la.dot(f, g) == 0]
        if la.rank(tight) == dq - 1:
            out.append(g)
    return out


def cone_contains(c: ConeRecord, x: Sequence, mode: str = "closure") -> bool:
    x = vec(x)
    for u in c.span_equations:
        if la.dot(u, x) != 0:
            return False
    strict = mode == "relative_interior"
    for u in c.facet_normals:
        s = la.dot(u, x)
        if s < 0 or (strict and s == 0):
            return False
    return True


def intersect_cones(c1: ConeRecord, c2: ConeRecord) -> ConeRecord:
    n = c1.ambient_dim
    if n != c2.ambient_dim:
        raise ValueError("dimension mismatch")
    eq_rows = [list(u) for u in c1.span_equations + c2.span_equations]
    null = la.nullspace(eq_rows, ncols=n) if eq_rows else \
        [tuple(Fraction(1 if i == j else 0) for i in range(n)) for j in range(n)]
    dt = len(null)
    if dt == 0:
        return cone_from_generators([], ambient_dim=n)
    ineq = []
    for u in c1.facet_normals + c2.facet_normals:
        ineq.append(tuple(la.dot(u, nv) for nv in null))

    lin_rows = la.nullspace(ineq, ncols=dt) if ineq else \
        [tuple(Fraction(1 if i == j else 0) for i in range(dt)) for j in range(dt)]
    gens_chart: dict = {}
    for lv in lin_rows:
        gens_chart[la.primitive_of_rational(lv)] = None
        gens_chart[la.primitive_of_rational(tuple(-x for x in lv))] = None
    dlin = len(lin_rows)
    dq = dt - dlin
    if dq > 0:
        # every extreme ray (mod lineality) is tight on dq-1 independent rows
        for idx in combinations(range(len(ineq)), dq - 1):
            rows = [ineq[i] for i in idx]
            ns = la.nullspace(rows, ncols=dt) if rows else \
                [tuple(Fraction(1 if i == j else 0) for i in range(dt))
                 for j in range(dt)]
            for v in ns:
                for cand in (v, tuple(-x for x in v)):
                    if all(la.dot(r, cand) >= 0 for r in ineq):
                        gens_chart[la.primitive_of_rational(cand)] = None

    gens_amb = []
    for c in gens_chart:
        amb = [Fraction(0)] * n
        for cj, nv in zip(c, null):
            for k in range(n):
                amb[k] += cj * nv[k]
        if not la.is_zero(amb):
            gens_amb.append(tuple(amb))
    return cone_from_generators(gens_amb, ambient_dim=n)


def is_face_of(f: ConeRecord, c: ConeRecord) -> bool:
    n = c.ambient_dim
    fgens = [vec(r) for r in f.extremal_rays]
    for b in f.lineality_basis:
        fgens.append(vec(b))
        fgens.append(vec(tuple(-x for x in b)))
    for g in fgens:
        if not cone_contains(c, g):
            return False
    tight = [u for u in c.facet_normals
             if all(la.dot(u, g) == 0 for g in fgens)]
    ggens = [vec(r) for r in c.extremal_rays
             if all(la.dot(u, r) == 0 for u in tight)]
    for b in c.lineality_basis:
        ggens.append(vec(b))
        ggens.append(vec(tuple(-x for x in b)))
    for g in ggens:
        if not cone_contains(f, g):
            return False
    return True


def cones_equal(c1: ConeRecord, c2: ConeRecord) -> bool:
    return c1.key() == c2.key()


def cone_subset(c1: ConeRecord, c2: ConeRecord) -> bool:
    """Point-set containment c1 <= c2."""
    for r in c1.extremal_rays:
        if not cone_contains(c2, r):
            return False
    for b in c1.lineality_basis:
        if not (cone_contains(c2, b) and cone_contains(c2, tuple(-x for x in b))):
            return False
    return True


def separating_functional(c: ConeRecord) -> Vec:
    if c.lineality_basis:
        raise NotStrictlyConvex("cone has lineality")
    if not c.extremal_rays:
        raise ValueError("zero cone")
    cons = [HalfSpace(vec(r), 1, GE) for r in c.extremal_rays]
    out = lp_feasible(cons)
    assert isinstance(out, Feasible)
    return out.witness


def rational_slice(c: ConeRecord) -> tuple[Vec, PolytopeRecord]:
    v0 = separating_functional(c)
    den = la.lcm_denominators([v0])
    v0 = tuple(x * den for x in v0)  # integer, still positive on all rays
    raw = [la.vscale(1 / la.dot(r, v0), vec(r)) for r in c.extremal_rays]
    m = la.lcm_denominators(raw)
    v = tuple(x / m for x in v0)
    k = hull_vertices([la.vscale(m, p) for p in raw])
    for vert in k.vertices:
        assert all(x.denominator == 1 for x in vert)
        assert la.dot(vert, v) == 1
    return v, k
