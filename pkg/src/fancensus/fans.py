"""Rational polyhedral fans on a fixed finite set of candidate rays.

This module reconstructs the quotient fan attached to a maximal closed
collection, and provides the fan-level predicates and constructions used by
the census: simpliciality, exact completeness (wall pairing, plus an
independent complement-emptiness oracle), Monte-Carlo sphere coverage with
exact membership tests, products, maximality among fans on a ray set, and the
two extreme coordinate-space lifts of a fan.

Conventions.  A `Fan` stores only its maximal cones; faces are implicit.  All
cones are strictly convex ("pointed").  `rays` lists the primitive generators
that actually occur as extremal rays of maximal cones — possibly a proper
subset of the candidate rays — and `max_cones` indexes into that list.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import geometry as geo
from . import linalg as la
from .distpoly import Catalog
from .enumeration import OpenSetDescriptor, descriptor_from_present
from .geometry import ConeRecord
from .lp import EQ, GE, LE, Feasible, HalfSpace, Infeasible, lp_feasible


class FanAxiomViolation(Exception):
    """Two cones meet in something other than a common face."""


@dataclass(frozen=True)
class Degenerate:
    """A present zero-set spans a cone that is not strictly convex."""

    zero_set: tuple[int, ...]  # 0-based ray indices of one offending zero-set


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    cone_records: tuple[ConeRecord, ...] = field(compare=False, repr=False)

    def key(self):
        """Canonical point-set identity: ambient dim + maximal cone keys."""
        return (self.dim, tuple(sorted(rec.key() for rec in self.cone_records)))


@dataclass(frozen=True)
class Complete:
    pass


@dataclass(frozen=True)
class Incomplete:
    witness: tuple  # integer vector outside the support


@dataclass(frozen=True)
class MaximalFan:
    pass


@dataclass(frozen=True)
class ExtendableFan:
    cone: ConeRecord
    ray_indices: tuple[int, ...]  # candidate-ray indices contained in `cone`


@dataclass(frozen=True)
class ClassificationRecord:
    descriptor: OpenSetDescriptor
    nondegenerate: bool
    fan: Fan | None = None
    simplicial: bool | None = None
    complete: bool | None = None
    projective: bool | None = None
    coverage: float | None = None
    coverage_samples: int | None = None
    coverage_seed: int | None = None

    def __post_init__(self):
        if self.projective and self.complete is False:
            raise ValueError("projective record marked incomplete")
        if not self.nondegenerate and self.fan is not None:
            raise ValueError("degenerate record carries a fan")
        if self.nondegenerate and self.fan is None:
            raise ValueError("nondegenerate record lacks its fan")


# ---------------------------------------------------------------------------
# construction


def _common_face_check(a: ConeRecord, b: ConeRecord) -> bool:
    """Exact test that a ∩ b is a face of both a and b (both pointed).

    If the condition holds, a ∩ b equals F := Cone(extremal rays of either
    cone lying in the other), so it suffices to check that F is a face of
    both and that a ∩ b does not exceed F.  For the latter: F, as a face of
    a, is cut out by u := Σ(facet normals of a vanishing on F); every point
    of a has u ≥ 0, hence a ∩ b ⊆ F iff {x ∈ a ∩ b : u·x ≥ 1} is infeasible.
    An empty tight set means F = a, i.e. a ⊆ b with a a common face already.
    """
    n = a.ambient_dim
    common = [r for r in a.extremal_rays if geo.cone_contains(b, r)]
    common += [r for r in b.extremal_rays if geo.cone_contains(a, r)]
    f = geo.cone_from_generators(common, ambient_dim=n)
    if not (geo.is_face_of(f, a) and geo.is_face_of(f, b)):
        return False
    tight = [u for u in a.facet_normals
             if all(la.dot(u, r) == 0 for r in f.extremal_rays)]
    if not tight:
        return True
    u = [Fraction(0)] * n
    for w in tight:
        u = [x + y for x, y in zip(u, w)]
    cons = [HalfSpace(w, 0, GE) for w in a.facet_normals + b.facet_normals]
    cons += [HalfSpace(e, 0, EQ) for e in a.span_equations + b.span_equations]
    cons.append(HalfSpace(u, 1, GE))
    return isinstance(lp_feasible(cons), Infeasible)


def _fan_from_cones(n: int, recs: Sequence[ConeRecord],
                    ray_order: Sequence[Sequence[int]]) -> Fan:
    """Assemble a Fan from candidate maximal cones.

    Dedupes by canonical extremal form, keeps inclusion-maximal cones,
    asserts the fan axioms pairwise, and indexes the extremal rays that
    actually occur in the order given by `ray_order`.
    """
    for rc in recs:
        if not rc.pointed:
            raise FanAxiomViolation("cone is not strictly convex")
    uniq: dict = {}
    for rc in recs:
        uniq.setdefault(rc.key(), rc)
    cones = list(uniq.values())
    keep = [rc for rc in cones
            if not any(other is not rc and geo.cone_subset(rc, other)
                       for other in cones)]
    for a, b in combinations(keep, 2):
        if not _common_face_check(a, b):
            raise FanAxiomViolation(
                f"cones {a.extremal_rays} and {b.extremal_rays} do not meet "
                "in a common face")
    pos = {tuple(int(x) for x in v): i for i, v in enumerate(ray_order)}
    used: set[tuple[int, ...]] = set()
    for rc in keep:
        for r in rc.extremal_rays:
            rr = tuple(int(x) for x in r)
            if rr not in pos:
                raise FanAxiomViolation(f"extremal ray {rr} outside the "
                                        "candidate ray list")
            used.add(rr)
    rays = tuple(sorted(used, key=lambda rr: pos[rr]))
    index = {rr: i for i, rr in enumerate(rays)}
    mc = []
    order = []
    for rc in keep:
        mc.append(tuple(sorted(index[tuple(int(x) for x in r)]
                               for r in rc.extremal_rays)))
        order.append(rc)
    pairs = sorted(zip(mc, order), key=lambda t: (len(t[0]), t[0]))
    return Fan(dim=n,
               rays=rays,
               max_cones=tuple(p[0] for p in pairs),
               cone_records=tuple(p[1] for p in pairs))


def fan_from_collection(rays: Sequence[Sequence[int]], cat: Catalog,
                        members: int) -> Fan | Degenerate:
    """Quotient fan of a closed collection over the catalog of `rays`.

    Every present coordinate support J contributes the cone spanned by the
    rays indexed by its zero-set I = {1..s} \\ J.  If any such cone fails
    strict convexity the collection is Degenerate; otherwise the deduped,
    inclusion-maximal cones form a fan (asserted, never assumed).
    """
    rvecs = [la.ivec(r) for r in rays]
    s = len(rvecs)
    if s != cat.s:
        raise ValueError("ray count does not match catalog")
    n = len(rvecs[0])
    cones = []
    for j in range(1 << s):
        if not members >> cat.by_mask[cat.sat[j]] & 1:
            continue
        zs = tuple(i for i in range(s) if not j >> i & 1)
        c = geo.cone_from_generators([rvecs[i] for i in zs], ambient_dim=n)
        if not c.pointed:
            return Degenerate(zero_set=zs)
        cones.append(c)
    return _fan_from_cones(n, cones, [la.primitive(v) for v in rvecs])


def zero_fan(n: int = 0) -> Fan:
    """The fan whose only cone is the origin of R**n."""
    rec = geo.cone_from_generators([], ambient_dim=n)
    return Fan(dim=n, rays=(), max_cones=((),), cone_records=(rec,))


def fan_to_json(f: Fan) -> dict:
    return {"dim": f.dim,
            "rays": [list(r) for r in f.rays],
            "max_cones": [list(c) for c in f.max_cones]}


def fan_from_json(obj: dict) -> Fan:
    """Build and fully validate a Fan from its JSON form.

    Every listed ray must be primitive, nonzero, and extremal in some maximal
    cone; no maximal cone may be contained in another; the fan axioms are
    asserted.
    """
    n = int(obj["dim"])
    rays = [la.ivec(r) for r in obj["rays"]]
    for r in rays:
        if la.is_zero(r):
            raise ValueError("zero ray")
        if la.primitive(r) != tuple(r):
            raise ValueError(f"ray {tuple(r)} is not primitive")
        if len(r) != n:
            raise ValueError("ray dimension mismatch")
    if len(set(map(tuple, rays))) != len(rays):
        raise ValueError("duplicate rays")
    recs = []
    for c in obj["max_cones"]:
        idx = sorted(set(int(i) for i in c))
        if any(i < 0 or i >= len(rays) for i in idx):
            raise ValueError(f"cone {c} indexes outside the ray list")
        recs.append(geo.cone_from_generators([rays[i] for i in idx],
                                             ambient_dim=n))
    if not recs:
        if rays:
            raise ValueError("rays listed but no cones use them")
        return Fan(dim=n, rays=(), max_cones=(), cone_records=())
    f = _fan_from_cones(n, recs, rays)
    if len(f.max_cones) != len(obj["max_cones"]):
        raise ValueError("max_cones contains duplicates or nested cones")
    if len(f.rays) != len(rays):
        raise ValueError("some listed ray is extremal in no maximal cone")
    return f


# ---------------------------------------------------------------------------
# predicates


def is_simplicial(f: Fan) -> bool:
    """Every maximal cone is spanned by exactly dim-of-cone extremal rays."""
    return all(len(rec.extremal_rays) == rec.dim for rec in f.cone_records)


def in_support(f: Fan, x: Sequence) -> bool:
    return any(geo.cone_contains(rec, x) for rec in f.cone_records)


def _scaled_int(v: Sequence) -> tuple[int, ...]:
    den = la.lcm_denominators([la.vec(v)])
    return tuple(int(x * den) for x in v)


def _first_witness(f: Fan, candidates) -> tuple[int, ...]:
    for w in candidates:
        if not la.is_zero(w) and not in_support(f, w):
            return tuple(int(x) for x in w)
    raise AssertionError("no witness found; fan data inconsistent")


def _witness_candidates_off_span(f: Fan, rec: ConeRecord):
    """Perturbations 2**t * p + v escaping a maximal cone of deficient dim.

    p is a relative-interior point of `rec` (sum of its extremal rays) and v
    a coordinate vector off its span; no other cone contains p (maximality),
    so large t certifies a point outside the whole support.
    """
    p = [0] * f.dim
    for r in rec.extremal_rays:
        p = [x + int(y) for x, y in zip(p, r)]
    e = rec.span_equations[0]
    k = next(i for i, x in enumerate(e) if x != 0)
    v = [1 if i == k else 0 for i in range(f.dim)]
    for t in range(512):
        yield tuple((x << t) + y for x, y in zip(p, v))


def _witness_candidates_across_wall(f: Fan, rec: ConeRecord, u, wall_rays):
    """Perturbations 2**t * p - u just outside an unpaired wall.

    p is a relative-interior point of the wall; since no second maximal cone
    carries this wall as a facet, no cone but `rec` contains p, and stepping
    against the inward normal u leaves `rec` for every t.
    """
    p = [0] * f.dim
    for r in wall_rays:
        p = [x + int(y) for x, y in zip(p, r)]
    ui = _scaled_int(u)
    for t in range(512):
        yield tuple((x << t) - y for x, y in zip(p, ui))


def is_complete_exact(f: Fan) -> Complete | Incomplete:
    """Exact completeness via wall pairing.

    A valid fan covers R**n iff every maximal cone is n-dimensional and every
    facet of every maximal cone is a facet of exactly two maximal cones.  On
    failure a verified integer witness outside the support is produced by
    perturbing either a deficient-dimension cone or an unpaired wall.
    """
    n = f.dim
    if not f.max_cones:
        if n == 0:
            return Incomplete(witness=())
        return Incomplete(_first_witness(
            f, [tuple(1 if i == 0 else 0 for i in range(n))]))
    for rec in f.cone_records:
        if rec.dim < n:
            return Incomplete(_first_witness(
                f, _witness_candidates_off_span(f, rec)))
    walls: dict = {}
    for rec in f.cone_records:
        for u in rec.facet_normals:
            wall_rays = tuple(sorted(
                r for r in rec.extremal_rays if la.dot(u, r) == 0))
            walls.setdefault(wall_rays, []).append((rec, u))
    for wall_rays, carriers in walls.items():
        if len(carriers) > 2:
            raise FanAxiomViolation(f"wall {wall_rays} lies in "
                                    f"{len(carriers)} maximal cones")
    for wall_rays, carriers in walls.items():
        if len(carriers) == 1:
            rec, u = carriers[0]
            return Incomplete(_first_witness(
                f, _witness_candidates_across_wall(f, rec, u, wall_rays)))
    return Complete()


def support_complement_point(f: Fan) -> tuple[int, ...] | None:
    """Independent completeness oracle: exact search of the complement.

    The complement of each cone is a finite union of open half-spaces (one
    per facet normal, two per span equation); a point outside the support
    picks one violated half-space per maximal cone.  Depth-first search over
    these choices with exact strict-LP pruning either produces a verified
    integer point outside the support or proves the complement empty.
    """
    n = f.dim
    if n == 0:
        return None if f.max_cones else ()
    if not f.max_cones:
        return tuple(1 if i == 0 else 0 for i in range(n))
    per_cone = []
    for rec in f.cone_records:
        opts = [tuple(u) for u in rec.facet_normals]
        for e in rec.span_equations:
            opts.append(tuple(e))
            opts.append(tuple(-x for x in e))
        per_cone.append((rec, opts))
    per_cone.sort(key=lambda t: len(t[1]))

    def dfs(remaining, cons: list[HalfSpace]):
        res = lp_feasible(cons, strict_mask=frozenset(range(len(cons))))
        if isinstance(res, Infeasible):
            return None
        x = res.witness if cons else tuple(Fraction(0) for _ in range(n))
        # branch on a cone still containing the witness: each child constraint
        # then cuts the witness off, so the search makes strict progress; if
        # no remaining cone contains it, the witness is the answer.
        hit = next((i for i, (rec, _) in enumerate(remaining)
                    if geo.cone_contains(rec, x)), None)
        if hit is None:
            return x
        rest = remaining[:hit] + remaining[hit + 1:]
        for w in remaining[hit][1]:
            got = dfs(rest, cons + [HalfSpace(w, 0, LE)])
            if got is not None:
                return got
        return None

    x = dfs(per_cone, [])
    if x is None:
        return None
    w = _scaled_int(x)
    assert not in_support(f, w)
    return w


def coverage_fraction(f: Fan, samples: int = 100000, seed: int = 0) -> float:
    """Fraction of seeded Gaussian directions lying in the support.

    Directions are drawn from a radially symmetric Gaussian, fixed by hashing
    (seed, fan JSON); each coordinate is the exact dyadic rational of its
    double representation.  A certified floating-point prefilter classifies
    clear members/non-members per cone; only borderline points fall back to
    exact arithmetic, so the returned fraction is exact for the drawn set.
    """
    import numpy as np

    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = f.dim
    if not f.max_cones:
        return 0.0
    if n == 0:
        return 1.0
    payload = json.dumps({"seed": seed, "fan": fan_to_json(f)},
                         sort_keys=True).encode()
    rng = np.random.default_rng(
        int.from_bytes(hashlib.sha256(payload).digest()[:8], "big"))
    pts = rng.standard_normal((samples, n))
    pts_abs = np.abs(pts)
    in_any = np.zeros(samples, dtype=bool)
    undecided_any = np.zeros(samples, dtype=bool)
    for rec in f.cone_records:
        rows = [_scaled_int(u) for u in rec.facet_normals]
        eqs = [_scaled_int(e) for e in rec.span_equations]
        if not rows and not eqs:
            # zero-dimensional ambient handled above; full space impossible
            raise AssertionError("pointed cone without constraints")
        mat = np.array(rows + eqs, dtype=float)
        d = pts @ mat.T
        bound = (pts_abs @ np.abs(mat).T) * (2 * n * 2.0 ** -52)
        k = len(rows)
        ge_ok = (d[:, :k] > bound[:, :k]).all(axis=1) if k else \
            np.ones(samples, dtype=bool)
        out = (d[:, :k] < -bound[:, :k]).any(axis=1) if k else \
            np.zeros(samples, dtype=bool)
        if eqs:
            # an exact zero of a Gaussian dyadic against a hyperplane is
            # borderline by construction; certified membership is impossible
            out |= (np.abs(d[:, k:]) > bound[:, k:]).any(axis=1)
            ge_ok &= np.zeros(samples, dtype=bool)
        in_any |= ge_ok
        undecided_any |= ~ge_ok & ~out
    borderline = np.flatnonzero(undecided_any & ~in_any)
    hits = int(np.count_nonzero(in_any))
    for i in borderline:
        x = tuple(Fraction(float(v)) for v in pts[i])
        if in_support(f, x):
            hits += 1
    return hits / samples


# ---------------------------------------------------------------------------
# constructions


def product_fan(f1: Fan, f2: Fan) -> Fan:
    """Product fan in the direct sum of the two ambient lattices."""
    n1, n2 = f1.dim, f2.dim
    rays = [tuple(r) + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + tuple(r) for r in f2.rays]
    off = len(f1.rays)
    recs = []
    for c1 in f1.max_cones:
        for c2 in f2.max_cones:
            idx = list(c1) + [i + off for i in c2]
            recs.append(geo.cone_from_generators([rays[i] for i in idx],
                                                 ambient_dim=n1 + n2))
    if not recs:
        return Fan(dim=n1 + n2, rays=(), max_cones=(), cone_records=())
    return _fan_from_cones(n1 + n2, recs, rays)


def is_maximal_fan(f: Fan, rays: Sequence[Sequence[int]]) \
        -> MaximalFan | ExtendableFan:
    """Maximality of `f` among fans whose rays come from `rays`.

    Searches every strictly convex cone generated by a subset of the
    candidate rays (canonically deduped, larger candidates first); if one is
    not already a face of a maximal cone yet meets every maximal cone in a
    common face, the fan extends by it.  Faces of a compatible cone are
    automatically compatible, so single-cone extensions decide maximality.
    """
    rvecs = [la.ivec(r) for r in rays]
    s = len(rvecs)
    n = f.dim
    cands: dict = {}
    for bits in range(1, 1 << s):
        idx = [i for i in range(s) if bits >> i & 1]
        rec = geo.cone_from_generators([rvecs[i] for i in idx], ambient_dim=n)
        if not rec.pointed or rec.dim == 0:
            continue
        if rec.key() not in cands:
            contained = tuple(i for i in range(s)
                              if geo.cone_contains(rec, rvecs[i]))
            cands[rec.key()] = (rec, contained)
    ordered = sorted(cands.values(), key=lambda t: (-len(t[1]), t[1]))
    for rec, contained in ordered:
        if any(geo.is_face_of(rec, mc) for mc in f.cone_records):
            continue
        if all(_common_face_check(rec, mc) for mc in f.cone_records):
            return ExtendableFan(cone=rec, ray_indices=contained)
    return MaximalFan()


def lift_fans(f: Fan, rays: Sequence[Sequence[int]]) \
        -> tuple[OpenSetDescriptor, OpenSetDescriptor]:
    """Descriptors of the two extreme coordinate-space lifts of `f`.

    For each maximal cone σ, the sparse lift keeps the coordinates of the
    candidate rays that are extremal in σ, the full lift those of every
    candidate ray contained in σ.  Each lifted cone contributes the
    coordinate chart whose points are nonzero outside its kept set; the
    union's presence table over supports yields the descriptor.
    """
    rvecs = [la.ivec(r) for r in rays]
    prims = [la.primitive(v) for v in rvecs]
    s = len(rvecs)
    full = (1 << s) - 1
    tilde_comp = []
    hat_comp = []
    for rec in f.cone_records:
        ext = {tuple(int(x) for x in r) for r in rec.extremal_rays}
        ti = 0
        hi = 0
        for i in range(s):
            if tuple(prims[i]) in ext:
                ti |= 1 << i
            if geo.cone_contains(rec, rvecs[i]):
                hi |= 1 << i
        tilde_comp.append(full & ~ti)
        hat_comp.append(full & ~hi)
    present_t = [any(j & c == c for c in tilde_comp) for j in range(1 << s)]
    present_h = [any(j & c == c for c in hat_comp) for j in range(1 << s)]
    return (descriptor_from_present(s, present_t),
            descriptor_from_present(s, present_h))
