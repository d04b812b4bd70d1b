"""Catalog of origin-anchored weight polytopes and their pair interactions.

For weight vectors b_1..b_s in Z^r, each subset J gives the polytope
conv({0} union {b_i : i in J}).  Two subsets give the same polytope exactly
when they have the same *saturation* T(J) = {i : b_i in P(J)}, so the catalog
stores one entry per distinct saturated index set, as a bitmask (bit i for
b_{i+1}).

For a pair of entries, the intersection R = P n Q matters only when it lies
in a *proper* face of at least one of the two (equivalently, R misses the
relative interior of P or of Q).  In that case R must itself be an admissible
member: R always contains conv(0, weights common to both), and either equals
that catalog polytope ("must_contain" it) or is strictly bigger, in which
case no collection may hold P and Q together ("incompatible").  When R meets
both relative interiors the pair imposes nothing ("irrelevant").
The pair table is filled lazily and memoized; incompatible pairs are logged
on the catalog for inspection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import geometry as geo
from . import linalg as la
from .geometry import PolytopeRecord
from .linalg import IVec

IRRELEVANT = "irrelevant"
MUST_CONTAIN = "must_contain"
INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class Entry:
    mask: int
    poly: PolytopeRecord


@dataclass
class Catalog:
    betas: tuple[IVec, ...]
    entries: tuple[Entry, ...]        # sorted by mask
    by_mask: dict[int, int]
    sat: dict[int, int]               # any subset mask -> saturated mask
    pair_table: dict[tuple[int, int], tuple[str, int | None]] = field(
        default_factory=dict)
    incompatible_log: list[tuple[int, int]] = field(default_factory=list)

    @property
    def s(self) -> int:
        return len(self.betas)

    def entry_of_subset(self, mask: int) -> int:
        return self.by_mask[self.sat[mask]]


def canonical_polytope(betas: Sequence[Sequence[int]], subset) -> PolytopeRecord:
    """conv of the origin and the selected weight vectors.

    `subset` is either an int bitmask or an iterable of 0-based indices.
    """
    bs = [la.ivec(b) for b in betas]
    r = len(bs[0]) if bs else 0
    if isinstance(subset, int):
        idx = [i for i in range(len(bs)) if subset >> i & 1]
    else:
        idx = sorted(set(subset))
    pts = [tuple(0 for _ in range(r))] + [bs[i] for i in idx]
    return geo.hull_vertices(pts)


def build_catalog(betas: Sequence[Sequence[int]]) -> Catalog:
    bs = tuple(la.ivec(b) for b in betas)
    s = len(bs)
    sat: dict[int, int] = {}
    polys: dict[int, PolytopeRecord] = {}
    for mask in range(1 << s):
        p = canonical_polytope(bs, mask)
        t = 0
        for i, b in enumerate(bs):
            if geo.in_polytope(p, b):
                t |= 1 << i
        sat[mask] = t
        if t not in polys:
            polys[t] = canonical_polytope(bs, t)
        assert polys[t].vertices == p.vertices  # saturation preserves the hull
    entries = tuple(Entry(mask=m, poly=polys[m]) for m in sorted(polys))
    by_mask = {e.mask: i for i, e in enumerate(entries)}
    return Catalog(betas=bs, entries=entries, by_mask=by_mask, sat=sat)


def _within_proper_face(p: PolytopeRecord, vertices: Sequence) -> bool:
    for u, b in p.facets:
        if all(la.dot(u, v) == b for v in vertices):
            return True
    return False


def intersection_class(cat: Catalog, i: int, j: int) -> tuple[str, int | None]:
    if i > j:
        i, j = j, i
    hit = cat.pair_table.get((i, j))
    if hit is not None:
        return hit
    p, q = cat.entries[i], cat.entries[j]
    m = p.mask & q.mask
    if m in (p.mask, q.mask):
        # nested pair: the intersection is the smaller entry itself
        small, big = (p, q) if m == p.mask else (q, p)
        if _within_proper_face(big.poly, small.poly.vertices):
            out = (MUST_CONTAIN, cat.by_mask[m])
        else:
            out = (IRRELEVANT, None)
        cat.pair_table[(i, j)] = out
        return out
    r = geo.intersect_polytopes(p.poly, q.poly)
    assert r is not None  # both contain the origin
    if not _within_proper_face(p.poly, r.vertices) and \
            not _within_proper_face(q.poly, r.vertices):
        out = (IRRELEVANT, None)
    else:
        k = cat.by_mask[m]  # always saturated: P(m) sits inside P n Q
        if r.vertices == cat.entries[k].poly.vertices:
            out = (MUST_CONTAIN, k)
        else:
            out = (INCOMPATIBLE, None)
            cat.incompatible_log.append((i, j))
    cat.pair_table[(i, j)] = out
    return out


def warm_pair_table(cat: Catalog) -> None:
    """Precompute the full pair table (e.g. before forking workers)."""
    for i in range(len(cat.entries)):
        for j in range(i, len(cat.entries)):
            intersection_class(cat, i, j)
