"""Completing 3D fans by triangulating the uncovered region.

When the closure of the complement of a 3D fan's support lies inside an
open half-space {x : <v, x> > 0}, slicing the complement with the affine
plane <v, x> = 1 yields a bounded planar region whose boundary segments
are the slices of the fan's free walls.  Triangulating that region
without new nodes and coning over the triangles completes the fan
without adding rays.
"""

from __future__ import annotations

from fractions import Fraction

from . import fans
from . import linalg as la
from . import triangulate as tr

__all__ = ["HypothesisViolated", "complete_fan_3d", "free_boundary_segments"]


class HypothesisViolated(Exception):
    """The uncovered region is not inside the required open half-space."""


def _facet_carriers(f: fans.Fan) -> dict[tuple, list[int]]:
    """Facet key (sorted tight extremal rays) -> indices of the
    full-dimensional maximal cones carrying that facet."""
    carriers: dict[tuple, list[int]] = {}
    for idx, rec in enumerate(f.cone_records):
        if rec.dim != 3:
            continue
        for u in rec.facet_normals:
            key = tuple(sorted(r for r in rec.extremal_rays
                               if la.dot(u, r) == 0))
            carriers.setdefault(key, []).append(idx)
    return carriers


def free_boundary_segments(f: fans.Fan) -> list[tuple[tuple, tuple]]:
    """Ray pairs spanning the free walls of the fan: facets of
    full-dimensional maximal cones carried by exactly one cone, plus
    two-dimensional maximal cones (free on both sides)."""
    if f.dim != 3:
        raise ValueError("free boundary analysis is implemented for 3D only")
    segments = []
    for key, carried_by in sorted(_facet_carriers(f).items()):
        if len(carried_by) == 1:
            if len(key) != 2:
                raise AssertionError(
                    "a facet of a 3D cone must have two extremal rays")
            segments.append((key[0], key[1]))
    for rec in f.cone_records:
        if rec.dim == 2:
            r1, r2 = sorted(rec.extremal_rays)
            segments.append((r1, r2))
        elif rec.dim < 2:
            raise HypothesisViolated(
                "maximal cones of dimension below 2 cannot be completed "
                "without new rays")
    return segments


def complete_fan_3d(f: fans.Fan, v, enforce_halfspace: bool = True
                    ) -> fans.Fan:
    """Complete a 3D fan whose uncovered region lies in {<v, x> > 0}.

    Checks that every ray of every free wall pairs positively with v
    (the hypothesis on the uncovered region), slices the free walls with
    the plane <v, x> = 1, triangulates the resulting bounded region on
    the existing nodes, and adds the cones over the triangles.  The
    result is complete, contains every input cone, and uses no new
    rays.  An already-complete fan is returned unchanged."""
    if f.dim != 3:
        raise ValueError(
            f"complete_fan_3d handles 3D fans only, got dimension {f.dim}")
    if len(v) != 3:
        raise ValueError("v must be a 3-dimensional rational vector")
    v = tuple(Fraction(c) for c in v)
    if all(c == 0 for c in v):
        raise ValueError("v must be nonzero")
    if isinstance(fans.is_complete_exact(f), fans.Complete):
        return f

    segments = free_boundary_segments(f)
    if not segments:
        raise HypothesisViolated(
            "the fan is incomplete but has no free walls to complete across")
    boundary_rays = sorted({r for seg in segments for r in seg})
    pairing = {r: la.dot(v, r) for r in boundary_rays}
    if enforce_halfspace:
        bad = [r for r in boundary_rays if pairing[r] <= 0]
        if bad:
            raise HypothesisViolated(
                f"free wall rays {bad} do not pair positively with v={v}")
    elif any(pairing[r] <= 0 for r in boundary_rays):
        raise HypothesisViolated(
            "cannot slice free walls whose rays do not pair positively "
            "with v (the experiment mode still needs a valid slice plane)")

    # Affine chart on the slice plane <v, x> = 1: scale each ray onto the
    # plane and drop one coordinate where v is nonzero (injective there).
    k = next(i for i in range(3) if v[i] != 0)
    keep = [i for i in range(3) if i != k]

    def node(r) -> tr.Point:
        p = tuple(Fraction(c, 1) / pairing[r] for c in r)
        return (p[keep[0]], p[keep[1]])

    node_of = {r: node(r) for r in boundary_rays}
    if len(set(node_of.values())) != len(boundary_rays):
        raise AssertionError("distinct rays must slice to distinct nodes")
    ray_at = {pt: r for r, pt in node_of.items()}

    try:
        tri = tr.triangulate_region(
            [(node_of[a], node_of[b]) for a, b in segments])
    except tr.UnboundedRegion as exc:
        raise HypothesisViolated(
            f"the uncovered region does not slice to a bounded region: "
            f"{exc}") from exc

    ray_index = {r: i for i, r in enumerate(f.rays)}
    new_cones = sorted(
        tuple(sorted(ray_index[ray_at[tri.points[i]]] for i in t))
        for t in tri.triangles)
    kept = [tuple(c) for c in f.max_cones
            if not any(set(c) <= set(n) for n in new_cones)]
    result = fans.fan_from_json({
        "dim": 3,
        "rays": [list(r) for r in f.rays],
        "max_cones": [list(c) for c in kept + new_cones],
    })
    assert isinstance(fans.is_complete_exact(result), fans.Complete)
    result_sets = [set(c) for c in result.max_cones]
    assert all(any(set(c) <= s for s in result_sets) for c in f.max_cones), \
        "the completion must contain every input cone"
    assert result.rays == f.rays
    return result
