"""Projectivity tests for complete fans via strictly convex support functions.

A complete fan is the normal fan of a full-dimensional lattice polytope
exactly when it carries a strictly convex piecewise-linear support function:
one rational functional m_σ per maximal cone σ, agreeing on shared faces and
breaking strictly across every wall.  Convention used throughout: the global
function is x ↦ min_σ ⟨m_σ, x⟩, so every functional strictly dominates the
function outside its own cone; strictness across a wall between σ and σ′
reads ⟨m_σ, v⟩ − ⟨m_σ′, v⟩ > 0 for every extremal ray v of σ′ not contained
in σ.  By homogeneity a strict gap can always be rescaled, so the search
normalizes every strict inequality to a gap of at least 1 and solves one
exact rational feasibility problem.

The feasibility system only constrains adjacent pairs: equalities on all
extremal rays of each wall (the rays span the wall hyperplane, which handles
non-simplicial cones uniformly), plus one normalized strict row per wall.
Given the wall equalities, the difference of two adjacent functionals is a
multiple of the wall normal, so a single interior test vector on the far
side decides strictness for every off-wall ray at once, and completeness
propagates linearity to the lower-dimensional shared faces of non-adjacent
pairs.  Both reductions are re-verified after solving: the returned
functionals are rescaled so every individual off-wall ray has a gap of at
least 1, then every pairwise shared-face equality and every per-ray wall
gap is checked by exact substitution.

Also provided: the polytope spanned by a maximal cone that uses all rays but
one (together with the leftover ray), and the projectivity check for
complete fans with exactly dim + 2 rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fans
from . import geometry as geo
from . import linalg as la
from .lp import EQ, GE, HalfSpace, Infeasible, lp_feasible

Vec = tuple[Fraction, ...]


class HypothesisViolated(Exception):
    """The fan lacks the structure the construction requires."""


class PreconditionViolated(Exception):
    """The fan does not satisfy the check's stated preconditions."""


@dataclass(frozen=True)
class SupportFunctionCertificate:
    """Witness that a complete fan is the normal fan of a polytope.

    functionals[i] is the rational linear functional attached to
    fan.max_cones[i].  wall_slacks lists, per ordered adjacent pair (i, j),
    the smallest value of ⟨m_i − m_j, v⟩ over the extremal rays v of cone j
    not contained in cone i; every slack is at least 1.
    """

    functionals: tuple[Vec, ...]
    wall_slacks: tuple[tuple[int, int, Fraction], ...]


@dataclass(frozen=True)
class NonProjective:
    """Verdict that no strictly convex support function exists.

    For an incomplete fan, ``incompleteness_witness`` is an integer point
    outside the support.  Otherwise ``farkas`` carries nonnegative
    multipliers combining the convexity system into 0 ≥ 1, one per
    constraint row in the order the rows were generated (all shared-face
    equalities first, then the strict wall rows).
    """

    reason: str
    incompleteness_witness: tuple | None = None
    farkas: tuple[Fraction, ...] | None = None


def _walls(f: fans.Fan) -> list[tuple[int, int, tuple]]:
    """(i, j, wall rays) triples of maximal cones sharing a common facet."""
    walls: dict[tuple, list[int]] = {}
    for idx, rec in enumerate(f.cone_records):
        for u in rec.facet_normals:
            key = tuple(sorted(r for r in rec.extremal_rays
                               if la.dot(u, r) == 0))
            walls.setdefault(key, []).append(idx)
    out = {}
    for key, carriers in walls.items():
        if len(carriers) == 2:
            i, j = sorted(carriers)
            out.setdefault((i, j), key)
    return sorted((i, j, key) for (i, j), key in out.items())


def _difference_row(nvars: int, n: int, i: int, j: int,
                    v: Sequence[int]) -> list[int]:
    """Coefficient row of ⟨m_i, v⟩ − ⟨m_j, v⟩ in the flattened variables."""
    row = [0] * nvars
    for t, x in enumerate(v):
        row[i * n + t] += x
        row[j * n + t] -= x
    return row


def _shared_face_rays(a: geo.ConeRecord, b: geo.ConeRecord) -> list:
    out: dict = {}
    for v in a.extremal_rays:
        if geo.cone_contains(b, v):
            out[v] = None
    for v in b.extremal_rays:
        if geo.cone_contains(a, v):
            out[v] = None
    return list(out)


def convexity_system(
        f: fans.Fan) -> tuple[list[HalfSpace], list[tuple[int, int, tuple]]]:
    """The exact feasibility system for a strictly convex support function.

    Variables are the concatenated functionals (cone i owns coordinates
    i*dim .. i*dim+dim-1).  Rows, in order: the gauge pinning the first
    functional to 0 (the system is invariant under adding one global linear
    functional), per-wall equalities on every wall ray, then one normalized
    strict row per wall, whose test vector is the sum of the extremal rays
    of the second cone off the wall.  Also returns the (i, j, test vector)
    triple behind each strict row, in row order.
    """
    recs = f.cone_records
    n, k = f.dim, len(recs)
    nvars = n * k
    constraints: list[HalfSpace] = []
    for t in range(n):
        row = [0] * nvars
        row[t] = 1
        constraints.append(HalfSpace(row, 0, EQ))
    walls = _walls(f)
    for i, j, wall_rays in walls:
        for v in wall_rays:
            constraints.append(
                HalfSpace(_difference_row(nvars, n, i, j, v), 0, EQ))
    strict_rows: list[tuple[int, int, tuple]] = []
    for i, j, wall_rays in walls:
        off = [v for v in recs[j].extremal_rays if v not in set(wall_rays)]
        test = tuple(sum(v[t] for v in off) for t in range(n))
        constraints.append(
            HalfSpace(_difference_row(nvars, n, i, j, test), 1, GE))
        strict_rows.append((i, j, test))
    return constraints, strict_rows


def strictly_convex_support_function(
        f: fans.Fan) -> SupportFunctionCertificate | NonProjective:
    """Decide whether a fan is the normal fan of a full-dimensional polytope.

    An incomplete fan is immediately NonProjective (with an integer point
    outside the support as witness).  For complete fans the convexity system
    described in the module docstring is solved exactly; feasibility yields
    a certificate, infeasibility yields Farkas multipliers.
    """
    comp = fans.is_complete_exact(f)
    if isinstance(comp, fans.Incomplete):
        return NonProjective(reason="fan is not complete",
                             incompleteness_witness=comp.witness)
    recs = f.cone_records
    n, k = f.dim, len(recs)
    constraints, _ = convexity_system(f)
    res = lp_feasible(constraints)
    if isinstance(res, Infeasible):
        return NonProjective(reason="no strictly convex support function",
                             farkas=res.multipliers)
    w = res.witness
    functionals = [tuple(w[i * n + t] for t in range(n)) for i in range(k)]
    per_ray_gaps = []
    for i, j, wall_rays in _walls(f):
        wall_set = set(wall_rays)
        for a, b in ((i, j), (j, i)):
            for v in recs[b].extremal_rays:
                if v not in wall_set:
                    gap = (la.dot(functionals[a], v)
                           - la.dot(functionals[b], v))
                    per_ray_gaps.append((a, b, gap))
    least = min(gap for _, _, gap in per_ray_gaps)
    if least <= 0:
        raise AssertionError("support function lost its strict gap")
    if least < 1:
        functionals = [tuple(x / least for x in m) for m in functionals]
        per_ray_gaps = [(a, b, gap / least) for a, b, gap in per_ray_gaps]
    slacks: dict[tuple[int, int], Fraction] = {}
    for a, b, gap in per_ray_gaps:
        cur = slacks.get((a, b))
        slacks[(a, b)] = gap if cur is None or gap < cur else cur
    for i in range(k):
        for j in range(i + 1, k):
            for v in _shared_face_rays(recs[i], recs[j]):
                if la.dot(functionals[i], v) != la.dot(functionals[j], v):
                    raise AssertionError("support function is not linear "
                                         "on a shared face")
    wall_slacks = tuple((a, b, g) for (a, b), g in sorted(slacks.items()))
    return SupportFunctionCertificate(functionals=tuple(functionals),
                                      wall_slacks=wall_slacks)


def big_cone_polytope(f: fans.Fan) -> tuple[geo.PolytopeRecord, bool]:
    """Polytope spanned by a maximal cone using all rays but one.

    Requires a maximal cone σ whose extremal rays are all the fan's rays
    except a single leftover ray u (HypothesisViolated otherwise).  Returns
    the convex hull of the rational polytope slice of σ together with u,
    plus a verified flag: True when the origin is interior to the hull and
    the cones over its facets are exactly the fan's maximal cones.
    """
    t = len(f.rays)
    idx = next((i for i, rec in enumerate(f.cone_records)
                if len(rec.extremal_rays) == t - 1), None)
    if idx is None:
        raise HypothesisViolated(
            f"no maximal cone uses exactly {t - 1} of the {t} rays")
    rec = f.cone_records[idx]
    used = set(rec.extremal_rays)
    leftover = next(r for r in f.rays if r not in used)
    _, slice_polytope = geo.rational_slice(rec)
    p = geo.hull_vertices(list(slice_polytope.vertices) + [leftover])
    try:
        verified = geo.origin_interior(p.vertices)
    except geo.NotFullDimensional:
        verified = False
    if verified:
        want = {r.key() for r in f.cone_records}
        got = set()
        for u, b in p.facets:
            gens = [v for v in p.vertices if la.dot(u, v) == b]
            got.add(geo.cone_from_generators(gens, ambient_dim=f.dim).key())
        verified = got == want
    return p, verified


def d_plus_2_check(f: fans.Fan) -> bool:
    """Projectivity verdict for a complete fan with exactly dim + 2 rays.

    Raises PreconditionViolated unless the fan is complete and its ray count
    is dim + 2.  Returns True when a strictly convex support function
    exists (no counterexample to projectivity), False otherwise.
    """
    if len(f.rays) != f.dim + 2:
        raise PreconditionViolated(
            f"fan has {len(f.rays)} rays, expected dim + 2 = {f.dim + 2}")
    if not isinstance(fans.is_complete_exact(f), fans.Complete):
        raise PreconditionViolated("fan is not complete")
    return isinstance(strictly_convex_support_function(f),
                      SupportFunctionCertificate)
