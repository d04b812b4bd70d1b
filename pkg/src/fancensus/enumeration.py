"""Enumeration of admissible polytope collections over a catalog.

A collection (bitmask over catalog entries) is *closed* when it is
  (i) upward closed: with an entry, every catalog entry containing it, and
  (ii) intersection closed: for every present pair, an exempt pair
      (intersection inside a proper face of both) imposes nothing, a
      "must_contain" pair forces its target entry, and an incompatible pair
      rules the collection out entirely.
`close` computes the least closed superset of a seed (or rejects it),
`enumerate_closed` finds every nonempty closed collection bottom-up, and
`maximal_collections` keeps those not strictly contained in a closed superset
in which they sit "saturated" (every catalog face of a member that the bigger
collection holds, the smaller one holds too).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterable, Sequence

from . import distpoly as dp
from . import geometry as geo
from .distpoly import Catalog


class NotSubset(Exception):
    pass


@dataclass(frozen=True)
class Closed:
    members: int


@dataclass(frozen=True)
class Rejected:
    pair: tuple[int, int]


class ClosureContext:
    """Bit-parallel tables derived from a warmed catalog."""

    def __init__(self, cat: Catalog):
        dp.warm_pair_table(cat)
        self.cat = cat
        n = len(cat.entries)
        self.n_entries = n
        masks = [e.mask for e in cat.entries]
        self.superset_mask = [0] * n
        for i, mi in enumerate(masks):
            acc = 0
            for j, mj in enumerate(masks):
                if mj & mi == mi:
                    acc |= 1 << j
            self.superset_mask[i] = acc
        self.inc_mask = [0] * n
        self.target_bit = [[0] * n for _ in range(n)]
        for (i, j), (kind, tgt) in cat.pair_table.items():
            if kind == dp.INCOMPATIBLE:
                self.inc_mask[i] |= 1 << j
                self.inc_mask[j] |= 1 << i
            elif kind == dp.MUST_CONTAIN:
                self.target_bit[i][j] = self.target_bit[j][i] = 1 << tgt
        # per-entry, per-byte-of-member-mask OR tables: forced_tbl[b][p][v]
        # is the union of target bits of entry b paired against every entry
        # whose index sits in byte p of a member mask with byte value v
        self.n_bytes = (n + 7) // 8
        self.forced_tbl = []
        for b in range(n):
            row = self.target_bit[b] + [0] * (8 * self.n_bytes - n)
            tbl = []
            for p in range(self.n_bytes):
                base = 8 * p
                vals = [0] * 256
                for v in range(1, 256):
                    low = v & -v
                    vals[v] = vals[v ^ low] | row[base + low.bit_length() - 1]
                tbl.append(vals)
            self.forced_tbl.append(tbl)
        # catalog entries that are faces of each entry's polytope
        by_verts = {e.poly.vertices: k for k, e in enumerate(cat.entries)}
        self.face_mask = [0] * n
        for i, e in enumerate(cat.entries):
            acc = 0
            for fset in geo.polytope_faces_vertexsets(e.poly):
                verts = tuple(sorted(e.poly.vertices[v] for v in fset))
                k = by_verts.get(verts)
                if k is not None:
                    acc |= 1 << k
            self.face_mask[i] = acc


def _ctx(cat: Catalog) -> ClosureContext:
    ctx = getattr(cat, "_closure_ctx", None)
    if ctx is None:
        ctx = ClosureContext(cat)
        cat._closure_ctx = ctx
    return ctx


def _close_core(ctx: ClosureContext, cur: int, new: int):
    """Absorb `new` bits into the already-closed mask `cur`.

    Returns (members, None) on success or (None, (i, j)) when an
    incompatible pair gets forced.  Every pair of final members is examined
    at the pop of whichever member enters the pending stack later, so pair
    constraints are never missed.
    """
    inc = ctx.inc_mask
    sup = ctx.superset_mask
    ftab = ctx.forced_tbl
    pending: list[int] = []
    add = new & ~cur
    cur |= add
    while add:
        low = add & -add
        pending.append(low.bit_length() - 1)
        add ^= low
    while pending:
        b = pending.pop()
        bad = inc[b] & cur
        if bad:
            other = (bad & -bad).bit_length() - 1
            return None, (min(b, other), max(b, other))
        tbl = ftab[b]
        forced = 0
        x = cur
        p = 0
        while x:
            byte = x & 255
            if byte:
                forced |= tbl[p][byte]
            x >>= 8
            p += 1
        add = (sup[b] | forced) & ~cur
        cur |= add
        while add:
            low = add & -add
            pending.append(low.bit_length() - 1)
            add ^= low
    return cur, None


def close(cat: Catalog, seed: int | Iterable[int]):
    """Least closed collection containing `seed`, or Rejected.

    `seed` is an entry bitmask or an iterable of entry indices.
    """
    ctx = _ctx(cat)
    if not isinstance(seed, int):
        mask = 0
        for i in seed:
            mask |= 1 << i
        seed = mask
    members, pair = _close_core(ctx, 0, seed)
    if members is None:
        return Rejected(pair=pair)
    return Closed(members=members)


_WORKER_CTX: ClosureContext | None = None


def _init_worker(cat: Catalog) -> None:
    global _WORKER_CTX
    _WORKER_CTX = _ctx(cat)


def _succ_batch(masks: Sequence[int]) -> list[int]:
    ctx = _WORKER_CTX
    full = (1 << ctx.n_entries) - 1
    out = set()
    for m in masks:
        rest = full & ~m
        while rest:
            low = rest & -rest
            rest ^= low
            got, _ = _close_core(ctx, m, low)
            if got is not None:
                out.add(got)
    return list(out)


def enumerate_closed(cat: Catalog, jobs: int = 1) -> set[int]:
    """All nonempty closed collections, grown from singleton closures.

    Every closed collection is reachable by single-entry extension steps:
    for a target D and a reached C < D, pick q in D missing from C; the
    closure of C plus q is again inside D and strictly bigger than C.
    """
    ctx = _ctx(cat)
    n = ctx.n_entries
    closed: set[int] = set()
    work: list[int] = []
    for e in range(n):
        got, _ = _close_core(ctx, 0, 1 << e)
        if got is not None and got not in closed:
            closed.add(got)
            work.append(got)
    if jobs <= 1:
        full = (1 << n) - 1
        while work:
            m = work.pop()
            rest = full & ~m
            while rest:
                low = rest & -rest
                rest ^= low
                got, _ = _close_core(ctx, m, low)
                if got is not None and got not in closed:
                    closed.add(got)
                    work.append(got)
        return closed
    pool = get_context("fork").Pool(jobs, initializer=_init_worker,
                                    initargs=(cat,))
    try:
        frontier = sorted(work)
        while frontier:
            chunks = [frontier[i::jobs] for i in range(jobs)]
            nxt = []
            for part in pool.map(_succ_batch, [ch for ch in chunks if ch]):
                for m in part:
                    if m not in closed:
                        closed.add(m)
                        nxt.append(m)
            frontier = sorted(nxt)
    finally:
        pool.close()
        pool.join()
    return closed


def is_saturated_in(cat: Catalog, small: int, big: int) -> bool:
    """True iff every catalog face of a member of `small` that `big` holds,
    `small` holds as well."""
    if small & ~big:
        raise NotSubset(f"{small:b} is not a subset of {big:b}")
    ctx = _ctx(cat)
    rest = small
    while rest:
        low = rest & -rest
        b = low.bit_length() - 1
        if ctx.face_mask[b] & big & ~small:
            return False
        rest ^= low
    return True


def _is_maximal(cat: Catalog, m: int) -> bool:
    """No closed strict superset of `m` holds `m` saturated.

    It suffices to test single-entry extensions: if some closed W > m
    works as a witness, then for any entry q in W but not m the closure
    of m+q is contained in W, still exceeds m, and inherits the witness
    property (a violating face inside the smaller closure would already
    violate it inside W).
    """
    ctx = _ctx(cat)
    faces_missing = 0
    rest = m
    while rest:
        low = rest & -rest
        faces_missing |= ctx.face_mask[low.bit_length() - 1]
        rest ^= low
    faces_missing &= ~m
    rest = ((1 << ctx.n_entries) - 1) & ~(m | faces_missing)
    while rest:
        bit = rest & -rest
        rest ^= bit
        got, _ = _close_core(ctx, m, bit)
        if got is not None and not got & faces_missing:
            return False
    return True


def _maximal_batch(masks: Sequence[int]) -> list[int]:
    cat = _WORKER_CTX.cat
    return [m for m in masks if _is_maximal(cat, m)]


def maximal_collections(cat: Catalog, collections: Iterable[int],
                        jobs: int = 1) -> set[int]:
    """Members with no closed strict superset they sit saturated in."""
    all_list = sorted(set(collections))
    if jobs > 1 and len(all_list) > 4 * jobs:
        chunks = [all_list[i::jobs] for i in range(jobs)]
        with get_context("fork").Pool(jobs, initializer=_init_worker,
                                      initargs=(cat,)) as pool:
            parts = pool.map(_maximal_batch, chunks)
        return set().union(*map(set, parts))
    _init_worker(cat)
    return set(_maximal_batch(all_list))


# ---------------------------------------------------------------------------
# descriptors of the associated open subsets

@dataclass(frozen=True)
class OpenSetDescriptor:
    """Complement description: forbidden antichain of 1-based index groups.

    A coordinate-support J is present iff it meets every forbidden group.
    Empty `forbidden` means the whole affine space ("X").
    """

    forbidden: tuple[tuple[int, ...], ...]

    def render(self) -> str:
        if not self.forbidden:
            return "X"
        groups = ["Z(" + ",".join(_letter(i) for i in grp) + ")"
                  for grp in self.forbidden]
        return "X∖(" + " ∪ ".join(groups) + ")"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()


def _letter(i: int) -> str:
    return chr(ord("a") + i - 1)


def _canon_groups(groups: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    gs = sorted({tuple(sorted(set(g))) for g in groups}, key=lambda g: (len(g), g))
    return tuple(gs)


def descriptor_from_present(s: int, present: Sequence[bool]) -> OpenSetDescriptor:
    """Descriptor of a union of coordinate torus orbits of `A**s` given its
    presence table over all ``2**s`` coordinate supports.

    `present` must be upward closed (a superset of a present support is
    present); the maximal absent supports then determine the complement, and
    their complements form the forbidden antichain.
    """
    forbidden = []
    for j in range(1 << s):
        if present[j]:
            continue
        if all(present[j | 1 << i] for i in range(s) if not j >> i & 1):
            comp = [(i + 1) for i in range(s) if not j >> i & 1]
            forbidden.append(comp)
    return OpenSetDescriptor(forbidden=_canon_groups(forbidden))


def open_set_descriptor(cat: Catalog, members: int) -> OpenSetDescriptor:
    s = cat.s
    present = [bool(members >> cat.by_mask[cat.sat[j]] & 1) for j in range(1 << s)]
    return descriptor_from_present(s, present)


def collection_from_descriptor(cat: Catalog, desc: OpenSetDescriptor) -> int:
    mask = 0
    for k, e in enumerate(cat.entries):
        if all(any(e.mask >> (i - 1) & 1 for i in grp) for grp in desc.forbidden):
            mask |= 1 << k
    return mask


_GROUP_RE = re.compile(r"Z\(([a-z](?:,[a-z])*)\)")


def parse_descriptor(text: str) -> OpenSetDescriptor:
    t = text.strip()
    if t == "X":
        return OpenSetDescriptor(forbidden=())
    m = re.fullmatch(r"X[∖\\]\((.*)\)", t)
    if not m:
        raise ValueError(f"malformed descriptor: {text!r}")
    groups = []
    for part in m.group(1).split("∪"):
        part = part.strip()
        g = _GROUP_RE.fullmatch(part)
        if not g:
            raise ValueError(f"malformed group {part!r} in {text!r}")
        groups.append([ord(c) - ord("a") + 1 for c in g.group(1).split(",")])
    return OpenSetDescriptor(forbidden=_canon_groups(groups))
