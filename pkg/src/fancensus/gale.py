"""Gale duality for spanning ray systems.

Input: s integer rays spanning Z^n.  Output: one integer weight vector per
ray, of length r = s - n, whose coordinates give a basis of the *saturated*
kernel lattice {w in Z^s : sum_i w_i ray_i = 0}.  Saturation matters: a
finite-index sublattice would change every downstream quotient, so the
roundtrip check verifies it explicitly and must reject e.g. doubled rows.
"""

from __future__ import annotations

import warnings
from typing import Sequence

from . import linalg as la
from .linalg import IVec


class NotSpanning(Exception):
    pass


class DuplicateRay(Exception):
    pass


class NonPrimitiveRay(UserWarning):
    pass


def validate_rays(rays: Sequence[Sequence[int]]) -> list[IVec]:
    out = [la.ivec(r) for r in rays]
    if not out:
        raise NotSpanning("no rays")
    n = len(out[0])
    if any(len(r) != n for r in out):
        raise ValueError("rays of mixed dimension")
    if any(all(x == 0 for x in r) for r in out):
        raise ValueError("zero ray")
    seen = {}
    for i, r in enumerate(out):
        if r in seen:
            raise DuplicateRay(f"rays {seen[r]} and {i} coincide: {r}")
        seen[r] = i
    if la.rank(out) != n:
        raise NotSpanning(f"rays span a rank-{la.rank(out)} sublattice of Z^{n}")
    for i, r in enumerate(out):
        if la.primitive(r) != r:
            warnings.warn(f"ray {i} = {r} is not primitive", NonPrimitiveRay)
    return out


def gale_dual(rays: Sequence[Sequence[int]]) -> list[IVec]:
    """Weight vector per ray: columns of a saturated kernel basis."""
    rs = validate_rays(rays)
    s, n = len(rs), len(rs[0])
    cols = [[r[j] for r in rs] for j in range(n)]  # n x s, rays as columns
    kernel = la.integer_kernel(cols, ncols=s)      # rows: basis of ker in Z^s
    assert len(kernel) == s - n
    return [tuple(row[i] for row in kernel) for i in range(s)]


def gale_roundtrip_check(rays: Sequence[Sequence[int]],
                         weights: Sequence[Sequence[int]]) -> bool:
    rs = [la.ivec(r) for r in rays]
    ws = [la.ivec(w) for w in weights]
    s, n = len(rs), len(rs[0])
    if len(ws) != s:
        return False
    r = s - n
    if any(len(w) != r for w in ws):
        return False
    # orthogonality: for each weight coordinate, sum_i w[i][k] * ray_i = 0
    for k in range(r):
        acc = [0] * n
        for w, ray in zip(ws, rs):
            for j in range(n):
                acc[j] += w[k] * ray[j]
        if any(x != 0 for x in acc):
            return False
    rows = [tuple(w[k] for w in ws) for k in range(r)]  # r x s matrix
    if la.rank(rows) != r:
        return False
    # saturation: rows must generate the full kernel lattice, not a sublattice
    cols = [[ray[j] for ray in rs] for j in range(n)]
    kernel = la.integer_kernel(cols, ncols=s)
    return la.lattice_index_check(rows, kernel) and \
        la.lattice_index_check(kernel, rows)
