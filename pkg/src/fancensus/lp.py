"""Exact rational linear-programming feasibility.

A single entry point, lp_feasible(), decides systems of linear constraints
over Q with optional strict inequalities.  Strictness is removed up front by
the classical homogenization trick: we search for (x, t) with t >= 1,
a.x - b t >= 0 for weak rows and a.x - b t >= 1 for strict rows; x/t then
solves the original system, and conversely any solution scales to one of the
homogenized system.  The core is a phase-1 simplex with Bland's rule over
Fractions, so it terminates and never sees a rounding error.

On infeasibility a Farkas certificate (one multiplier per input constraint)
is returned and verified by substitution before handing it to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Vec, fr, vec

GE, LE, EQ = ">=", "<=", "=="


@dataclass(frozen=True)
class HalfSpace:
    normal: Vec
    offset: Fraction
    sense: str = GE  # ">=", "<=" or "=="

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "offset", fr(self.offset))
        if self.sense not in (GE, LE, EQ):
            raise ValueError(f"bad sense {self.sense!r}")
        if all(x == 0 for x in self.normal):
            raise ValueError("zero normal")

    def holds(self, x: Sequence, strict: bool = False) -> bool:
        v = sum(a * fr(t) for a, t in zip(self.normal, x))
        if self.sense == EQ:
            return v == self.offset
        if self.sense == LE:
            return v < self.offset if strict else v <= self.offset
        return v > self.offset if strict else v >= self.offset


@dataclass(frozen=True)
class Feasible:
    witness: Vec


@dataclass(frozen=True)
class Infeasible:
    # multipliers[i] pairs with constraints[i]; nonnegative on inequality rows.
    multipliers: tuple[Fraction, ...]


def _simplex_phase1(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Find z >= 0 with rows . z = rhs (rhs >= 0 assumed), or the dual
    multipliers pi proving there is none.  Returns (z | None, pi)."""
    m, n = len(rows), (len(rows[0]) if rows else 0)
    # tableau over columns: n structural + m artificial, basis = artificials
    tab = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(m)] + [rhs[i]]
           for i, row in enumerate(rows)]
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced costs c_j - sum over rows
    obj = [Fraction(0)] * (n + m + 1)
    for j in range(n + m + 1):
        s = sum(tab[i][j] for i in range(m))
        obj[j] = (Fraction(1) if n <= j < n + m else Fraction(0)) - s

    total = n + m
    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        # ratio test, Bland: smallest basis index wins ties
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # phase-1 objective is bounded below by 0; cannot be unbounded
            raise AssertionError("phase-1 unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    value = -obj[total]
    if value == 0:
        z = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                z[b] = tab[i][total]
        return z, None
    # infeasible: simplex multipliers from the artificial columns' reduced costs
    pi = [Fraction(1) - obj[n + i] for i in range(m)]
    return None, pi


def lp_feasible(constraints: Sequence[HalfSpace],
                strict_mask: frozenset[int] | set[int] = frozenset()) -> Feasible | Infeasible:
    """Decide the system exactly.  strict_mask holds indices of constraints to
    be read strictly (their sense must be an inequality)."""
    if not constraints:
        return Feasible(witness=())
    dim = len(constraints[0].normal)
    for c in constraints:
        if len(c.normal) != dim:
            raise ValueError("dimension mismatch")
    for i in strict_mask:
        if constraints[i].sense == EQ:
            raise ValueError("strict equality makes no sense")

    # homogenize: variables (x, t); row i becomes  s_i*(a_i.x - b_i t) >= eps_i
    # with s_i flipping '<=' to '>='; eps_i = 1 on strict rows; t >= 1 appended.
    hom_rows: list[list[Fraction]] = []
    hom_lo: list[Fraction] = []
    senses: list[str] = []
    for i, c in enumerate(constraints):
        s = Fraction(-1) if c.sense == LE else Fraction(1)
        hom_rows.append([s * a for a in c.normal] + [-s * c.offset])
        hom_lo.append(Fraction(1) if i in strict_mask else Fraction(0))
        senses.append(EQ if c.sense == EQ else GE)
    hom_rows.append([Fraction(0)] * dim + [Fraction(1)])
    hom_lo.append(Fraction(1))
    senses.append(GE)

    # to standard form: free vars split, surplus vars on >= rows (rhs >= 0 already)
    nfree = dim + 1
    nsurp = sum(1 for s in senses if s == GE)
    rows: list[list[Fraction]] = []
    k = 0
    for row, sense in zip(hom_rows, senses):
        full = [x for x in row] + [-x for x in row] + [Fraction(0)] * nsurp
        if sense == GE:
            full[2 * nfree + k] = Fraction(-1)
            k += 1
        rows.append(full)

    z, pi = _simplex_phase1(rows, hom_lo)
    if z is not None:
        xt = [z[j] - z[nfree + j] for j in range(nfree)]
        t = xt[dim]
        assert t >= 1
        witness = tuple(x / t for x in xt[:dim])
        for i, c in enumerate(constraints):
            assert c.holds(witness, strict=(i in strict_mask)), "witness failed"
        return Feasible(witness=witness)

    # map multipliers back to the caller's rows; mult_i = pi_i * s_i so that
    # sum_i mult_i * a_i = 0 and the offsets certify the contradiction
    mult = []
    for i, c in enumerate(constraints):
        s = Fraction(-1) if c.sense == LE else Fraction(1)
        mult.append(pi[i] * s)
    _verify_certificate(constraints, strict_mask, mult)
    return Infeasible(multipliers=tuple(mult))


def _verify_certificate(constraints, strict_mask, mult):
    """Check the Farkas certificate by substitution.

    Any x solving the system would give 0 = sum mult_i (a_i.x) >= sum mult_i b_i,
    strictly if a strict row carries nonzero weight — so the conditions below
    are an outright proof of infeasibility.
    """
    dim = len(constraints[0].normal)
    for i, c in enumerate(constraints):
        if c.sense == GE:
            assert mult[i] >= 0, "certificate sign error"
        elif c.sense == LE:
            assert mult[i] <= 0, "certificate sign error"
    combo = [Fraction(0)] * dim
    for m, c in zip(mult, constraints):
        for j in range(dim):
            combo[j] += m * c.normal[j]
    assert all(x == 0 for x in combo), "certificate does not cancel"
    gap = sum(m * c.offset for m, c in zip(mult, constraints))
    strict_weight = sum(abs(mult[i]) for i in strict_mask)
    assert gap > 0 or (gap == 0 and strict_weight > 0), "certificate proves nothing"
