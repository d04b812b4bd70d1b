"""Toric GIT chamber scan over the weight space of a spanning ray system.

Setup: s primitive rays nu_1..nu_s positively spanning R^n, Gale-dual to
weight vectors beta_1..beta_s in Z^r (r = s - n).  An integer character
chi in Z^r selects the open subset of affine s-space whose points have
support J with chi in Cone(beta_j : j in J); its quotient data is the
collection of catalog entries whose support cone contains chi.

The same collection is computed a second, independent way.  Any integer
lift a of chi (sum_i a_i beta_i = chi) defines the polyhedron

    P_a = {m in R^n : <m, nu_i> >= -a_i for all i},

bounded because the rays positively span.  Each vertex v of P_a has an
"irrelevant support" J_v = {i : <v, nu_i> > -a_i}, and the semistable
collection is the upward closure of the entries of those supports.
``semistable_collection`` runs both routes on every call and raises
``OracleDisagreement`` if they ever differ.

Chamber discovery is by sampling: rays of the weight-space subdivision
(common refinement of all subset cones) are computed exactly, then
characters are sampled as small positive combinations of those rays.
The map chi -> collection is constant on each relatively open cell, so
sampling every cell spanned by its own rays visits every chamber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import fans
from . import geometry as geo
from . import linalg as la
from .distpoly import Catalog
from .linalg import IVec, Vec


class LiftFailure(Exception):
    """No integer lift of the character exists (unsaturated weight lattice)."""


class EmptyPolyhedron(Exception):
    """The character lies outside the cone spanned by the weights."""


class OracleDisagreement(Exception):
    """Two independent computations of the same quantity differ."""


# ---------------------------------------------------------------------------
# secondary-fan rays


def _collect_rays(out: dict, cones) -> None:
    for c in cones:
        for v in c.extremal_rays:
            out[v] = None
        if c.dim == 1 and c.lineality_basis:
            for bvec in c.lineality_basis:
                out[la.primitive(bvec)] = None
                out[la.primitive(tuple(-x for x in bvec))] = None


def secondary_rays(weights: Sequence[Sequence[int]]) -> list[IVec]:
    """Rays of the weight-space subdivision by all subset cones.

    A ray of the common refinement of {Cone(beta_i : i in S)} is a
    one-dimensional meet of subset cones.  Through rank 3 every such meet
    is either an extremal ray of a single subset cone or lies on the line
    where the spans of two subset cones cross (every face of a subset
    cone is again a subset cone, so facet crossings are such pairs); both
    families are enumerated exactly.  In higher ranks the meet
    semilattice is instead closed under iterated pairwise intersection,
    which is slower but rank-independent.
    """
    ws = [la.ivec(w) for w in weights]
    if not ws:
        raise ValueError("no weights")
    r = len(ws[0])
    if any(len(w) != r for w in ws):
        raise ValueError("weights of mixed dimension")
    s = len(ws)
    cones: dict = {}
    for mask in range(1, 1 << s):
        c = geo.cone_from_generators([ws[i] for i in range(s) if mask >> i & 1],
                                     ambient_dim=r)
        if c.dim > 0:
            cones.setdefault(c.key(), c)
    out: dict[IVec, None] = {}
    _collect_rays(out, cones.values())
    if r <= 3:
        wide = [c for c in cones.values() if c.dim >= 2]
        for i in range(len(wide)):
            for j in range(i + 1, len(wide)):
                a, b = wide[i], wide[j]
                eqs = [list(u) for u in a.span_equations + b.span_equations]
                if not eqs:
                    continue
                null = la.nullspace(eqs, ncols=r)
                if len(null) != 1:
                    continue
                d = la.primitive_of_rational(null[0])
                for cand in (d, tuple(-x for x in d)):
                    if geo.cone_contains(a, cand) and geo.cone_contains(b, cand):
                        out[cand] = None
        return sorted(out)
    done_pairs: set = set()
    changed = True
    while changed:
        changed = False
        items = list(cones.values())
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                a, b = items[i], items[j]
                if a.dim <= 1 and b.dim <= 1:
                    continue  # meets of rays add nothing new
                pk = (a.key(), b.key())
                if pk in done_pairs:
                    continue
                done_pairs.add(pk)
                c = geo.intersect_cones(a, b)
                if c.dim > 0 and c.key() not in cones:
                    cones[c.key()] = c
                    changed = True
    _collect_rays(out, cones.values())
    return sorted(out)


def chamber_samples(rays: Sequence[Sequence[int]], r: int,
                    bound: int = 3) -> list[IVec]:
    """Sample characters: {1..bound}-weighted sums over every ray subset
    of size 1..r (singles and their scalings included), deduplicated in
    generation order."""
    rs = [la.ivec(v) for v in rays]
    if not rs:
        raise ValueError("no rays")
    out: dict[IVec, None] = dict.fromkeys(rs)
    for k in range(1, min(r, len(rs)) + 1):
        for combo in combinations(range(len(rs)), k):
            for coeffs in product(range(1, bound + 1), repeat=k):
                v = [0] * len(rs[0])
                for c, i in zip(coeffs, combo):
                    for t in range(len(v)):
                        v[t] += c * rs[i][t]
                out[tuple(v)] = None
    return list(out)


# ---------------------------------------------------------------------------
# the quotient polyhedron P_a


@dataclass(frozen=True)
class GitPolyhedron:
    """P_a = {m : <m, nu_i> >= -a_i} for an integer lift a of a character.

    ``facet_incidence[i]`` has bit v set iff sorted vertex v satisfies
    <v, nu_i> = -a_i (lies on the i-th virtual facet).  The irrelevant
    supports are the deduplicated complements {i : v not on facet i}.
    """
    chi: IVec
    lift: IVec
    vertices: tuple[Vec, ...]
    facet_incidence: tuple[int, ...]
    irrelevant_supports: tuple[tuple[int, ...], ...]


class _VertexSolver:
    """Vertex enumeration for {m : <m, nu_i> >= -a_i} with fixed rays.

    Precomputes the inverse of every nonsingular n-subset of the rays, so
    vertices for each new offset vector are a few exact matrix-vector
    products.  Requires the rays to positively span (bounded polyhedra).
    """

    def __init__(self, rays: Sequence[IVec]):
        self.rays = [la.ivec(v) for v in rays]
        self.n = len(self.rays[0])
        full = geo.cone_from_generators(self.rays)
        if full.facet_normals or full.span_equations:
            raise ValueError("rays must positively span R^n "
                             "(otherwise the polyhedron is unbounded)")
        self.inverses: list[tuple[tuple[int, ...], list[Vec]]] = []
        eye = [[Fraction(int(i == j)) for j in range(self.n)]
               for i in range(self.n)]
        for subset in combinations(range(len(self.rays)), self.n):
            rows = [self.rays[i] for i in subset]
            cols = []
            for k in range(self.n):
                col = la.solve(rows, eye[k])
                if col is None:
                    break
                cols.append(col)
            if len(cols) == self.n:
                inv_rows = [tuple(cols[k][t] for k in range(self.n))
                            for t in range(self.n)]
                self.inverses.append((subset, inv_rows))

    def vertices(self, a: Sequence[int]) -> list[Vec]:
        found: dict[Vec, None] = {}
        for subset, inv in self.inverses:
            rhs = [Fraction(-a[i]) for i in subset]
            x = tuple(la.dot(row, rhs) for row in inv)
            if x in found:
                continue
            if all(la.dot(nu, x) >= -ai for nu, ai in zip(self.rays, a)):
                found[x] = None
        return sorted(found)


_SOLVERS: dict[tuple, _VertexSolver] = {}


def _solver(rays: Sequence[Sequence[int]]) -> _VertexSolver:
    key = tuple(la.ivec(v) for v in rays)
    got = _SOLVERS.get(key)
    if got is None:
        got = _SOLVERS[key] = _VertexSolver(key)
    return got


def _check_pairing(rays: Sequence[IVec], weights: Sequence[IVec]) -> None:
    if len(rays) != len(weights):
        raise ValueError("rays and weights must pair up one to one")
    n, r = len(rays[0]), len(weights[0])
    for k in range(r):
        for j in range(n):
            if sum(w[k] * v[j] for w, v in zip(weights, rays)) != 0:
                raise ValueError("weights are not orthogonal to the rays")


def _weight_rows(weights: Sequence[IVec]) -> list[list[int]]:
    r = len(weights[0])
    return [[w[k] for w in weights] for k in range(r)]


def git_polyhedron(rays: Sequence[Sequence[int]],
                   weights: Sequence[Sequence[int]],
                   chi: Sequence[int],
                   lift: Sequence[int] | None = None) -> GitPolyhedron:
    """Exact vertices, virtual-facet incidences and irrelevant supports of
    P_a for an integer lift a of chi (found with a lattice solve unless
    supplied).  Raises LiftFailure when no integer lift exists and
    EmptyPolyhedron when P_a is empty."""
    rs = [la.ivec(v) for v in rays]
    ws = [la.ivec(w) for w in weights]
    chiv = la.ivec(chi)
    _check_pairing(rs, ws)
    rows = _weight_rows(ws)
    if len(chiv) != len(rows):
        raise ValueError("character has wrong dimension")
    if lift is None:
        a = la.integer_solve(rows, chiv)
        if a is None:
            raise LiftFailure(f"no integer lift of {chiv}")
    else:
        a = la.ivec(lift)
        if tuple(sum(row[i] * a[i] for i in range(len(a))) for row in rows) \
                != chiv:
            raise ValueError("provided lift does not map to the character")
    verts = _solver(rs).vertices(a)
    if not verts:
        raise EmptyPolyhedron(f"character {chiv} admits no semistable points")
    incidence = []
    for nu, ai in zip(rs, a):
        bits = 0
        for vi, v in enumerate(verts):
            if la.dot(nu, v) == -ai:
                bits |= 1 << vi
        incidence.append(bits)
    supports: dict[tuple[int, ...], None] = {}
    for vi in range(len(verts)):
        supports[tuple(i for i, bits in enumerate(incidence)
                       if not bits >> vi & 1)] = None
    return GitPolyhedron(chi=chiv, lift=a, vertices=tuple(verts),
                         facet_incidence=tuple(incidence),
                         irrelevant_supports=tuple(sorted(supports)))


# ---------------------------------------------------------------------------
# semistable collections (two independent routes, always compared)


class _ScanContext:
    """Per-(catalog, rays) caches for repeated character evaluations."""

    def __init__(self, rays: tuple[IVec, ...], cat: Catalog):
        _check_pairing(rays, list(cat.betas))
        self.rays = rays
        self.cat = cat
        r = len(cat.betas[0])
        s = len(cat.betas)
        self.entry_cones = [
            geo.cone_from_generators(
                [cat.betas[i] for i in range(s) if e.mask >> i & 1],
                ambient_dim=r)
            for e in cat.entries]
        rows = _weight_rows(list(cat.betas))
        self.unit_lifts: list[IVec] | None = []
        for k in range(r):
            u = la.integer_solve(rows, [int(i == k) for i in range(r)])
            if u is None:
                self.unit_lifts = None
                break
            self.unit_lifts.append(u)
        self.weight_rows = rows
        self.cache: dict[IVec, int] = {}


def _scan_context(rays: Sequence[Sequence[int]], cat: Catalog) -> _ScanContext:
    key = tuple(la.ivec(v) for v in rays)
    store = cat.__dict__.setdefault("_gitscan_contexts", {})
    ctx = store.get(key)
    if ctx is None:
        ctx = store[key] = _ScanContext(key, cat)
    return ctx


def semistable_collection(rays: Sequence[Sequence[int]], cat: Catalog,
                          chi: Sequence[int]) -> int:
    """Collection (entry bitmask) of chi-semistable supports.

    Route one: entry present iff chi lies in the cone of its weights.
    Route two: upward closure of the irrelevant supports of the quotient
    polyhedron.  Both are computed; OracleDisagreement on any mismatch.
    Characters outside the weight cone yield the empty collection.
    """
    ctx = _scan_context(rays, cat)
    chiv = la.ivec(chi)
    got = ctx.cache.get(chiv)
    if got is not None:
        return got
    members = 0
    for k, cone in enumerate(ctx.entry_cones):
        if geo.cone_contains(cone, chiv):
            members |= 1 << k
    if ctx.unit_lifts is not None:
        a = tuple(sum(c * u[i] for c, u in zip(chiv, ctx.unit_lifts))
                  for i in range(len(cat.betas)))
    else:
        a = la.integer_solve(ctx.weight_rows, chiv)
        if a is None:
            raise LiftFailure(f"no integer lift of {chiv}")
    verts = _solver(ctx.rays).vertices(a)
    from_polyhedron = 0
    if verts:
        incidence = [[la.dot(nu, v) == -ai for v in verts]
                     for nu, ai in zip(ctx.rays, a)]
        support_masks = set()
        for vi in range(len(verts)):
            m = 0
            for i, col in enumerate(incidence):
                if not col[vi]:
                    m |= 1 << i
            support_masks.add(m)
        for k, e in enumerate(cat.entries):
            if any(e.mask & jm == jm for jm in support_masks):
                from_polyhedron |= 1 << k
    if members != from_polyhedron:
        raise OracleDisagreement(
            f"semistable collection mismatch at chi={chiv}: "
            f"cone membership {members:#x} vs polyhedron {from_polyhedron:#x}")
    ctx.cache[chiv] = members
    return members


def is_degenerate_character(rays: Sequence[Sequence[int]], cat: Catalog,
                            chi: Sequence[int]) -> bool:
    """True iff the chi-semistable collection fails to yield a fan (the
    character sits on the boundary structure of the weight-space
    subdivision).  The character must lie in the weight cone."""
    members = semistable_collection(rays, cat, chi)
    if members == 0:
        raise ValueError(f"character {tuple(chi)} is outside the weight cone")
    return isinstance(fans.fan_from_collection(rays, cat, members),
                      fans.Degenerate)


def product_weights(ws1: Sequence[Sequence[int]],
                    ws2: Sequence[Sequence[int]]) -> list[IVec]:
    """Block-diagonal weight system of a product of two torus actions."""
    w1 = [la.ivec(w) for w in ws1]
    w2 = [la.ivec(w) for w in ws2]
    r1 = len(w1[0]) if w1 else 0
    r2 = len(w2[0]) if w2 else 0
    out = [w + (0,) * r2 for w in w1]
    out += [(0,) * r1 + w for w in w2]
    return out


# ---------------------------------------------------------------------------
# the scan


@dataclass(frozen=True)
class SecondaryScan:
    """Sampled characters and their semistable collections.

    Every sample is a positive integer combination of subdivision rays,
    so it lies in the cone spanned by the weights by construction.
    """
    rays: tuple[IVec, ...]
    samples: tuple[IVec, ...]
    by_character: dict = field(compare=False)

    def distinct_collections(self) -> set[int]:
        return set(self.by_character.values())


_WORKER: tuple | None = None


def _init_scan_worker(rays, cat) -> None:
    global _WORKER
    _WORKER = (rays, cat)


def _scan_batch(chis):
    rays, cat = _WORKER
    return [semistable_collection(rays, cat, chi) for chi in chis]


def scan(rays: Sequence[Sequence[int]], cat: Catalog, depth: int = 3,
         jobs: int = 1) -> SecondaryScan:
    """Sample the weight space and evaluate every sampled character."""
    srays = secondary_rays(list(cat.betas))
    r = len(cat.betas[0])
    samples = chamber_samples(srays, r, bound=depth)
    rays_t = tuple(la.ivec(v) for v in rays)
    if jobs > 1:
        import multiprocessing as mp
        chunks = [samples[i::jobs] for i in range(jobs)]
        with mp.Pool(jobs, initializer=_init_scan_worker,
                     initargs=(rays_t, cat)) as pool:
            results = pool.map(_scan_batch, chunks)
        by_char = {}
        for chunk, res in zip(chunks, results):
            by_char.update(zip(chunk, res))
        by_char = {chi: by_char[chi] for chi in samples}
    else:
        by_char = {chi: semistable_collection(rays_t, cat, chi)
                   for chi in samples}
    return SecondaryScan(rays=tuple(srays), samples=tuple(samples),
                         by_character=by_char)
