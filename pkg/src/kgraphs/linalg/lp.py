"""Exact rational linear programming.

Dense two-phase tableau simplex over :class:`fractions.Fraction` with Bland's
least-index rule, so the pivot sequence (and therefore every returned vertex
and certificate) is reproducible.

Problem form::

    maximize (or minimize)  c . x
    subject to              A_eq x == b_eq
                            A_ub x <= b_ub
                            x_j >= 0 unless j in ``free``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    basis: tuple[int, ...] | None = None
    # y >= 0 on <= rows, y free on == rows, with y^T A >= 0 on x >= 0 columns,
    # y^T A == 0 on free columns and y . b < 0.  Rows ordered eq then ub.
    farkas: tuple[int, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


def primitive(v: Iterable[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints) if g else tuple(ints)


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.T = rows
        self.basis = basis
        self.z: list[Fraction] = []

    def set_costs(self, cost: Sequence[Fraction]) -> None:
        z = list(cost) + [Fraction(0)]
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[r]
                z = [zj - cb * tj for zj, tj in zip(z, row)]
        self.z = z

    def pivot(self, r: int, j: int) -> None:
        row = self.T[r]
        p = row[j]
        if p != 1:
            row = [x / p for x in row]
            self.T[r] = row
        for i, other in enumerate(self.T):
            f = other[j]
            if i != r and f:
                self.T[i] = [a - f * b for a, b in zip(other, row)]
        f = self.z[j]
        if f:
            self.z = [a - f * b for a, b in zip(self.z, row)]
        self.basis[r] = j

    def run(self, allowed: int) -> int | None:
        """Minimize over columns ``< allowed``; return an unbounded column or None."""
        while True:
            enter = next((j for j in range(allowed) if self.z[j] < 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)


def lp_solve_exact(c: Sequence, A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   free: Iterable[int] = (), maximize: bool = True) -> LPResult:
    n = len(c)
    free = set(free)
    F = Fraction
    # standard-form columns: x_j^+ then (for free j) x_j^-, interleaved
    colmap: list[tuple[int, int]] = []
    for j in range(n):
        colmap.append((j, 1))
        if j in free:
            colmap.append((j, -1))
    nx = len(colmap)
    m_eq, m_ub = len(A_eq), len(A_ub)
    m = m_eq + m_ub
    nslack = m_ub
    art0 = nx + nslack
    width = art0 + m

    rows, signs = [], []
    for i, (arow, bi, is_ub) in enumerate(
            [(a, b, False) for a, b in zip(A_eq, b_eq)]
            + [(a, b, True) for a, b in zip(A_ub, b_ub)]):
        row = [F(arow[j]) * s for j, s in colmap] + [F(0)] * (nslack + m)
        if is_ub:
            row[nx + i - m_eq] = F(1)
        rhs = F(bi)
        s = 1
        if rhs < 0:
            s = -1
            row = [-x for x in row]
            rhs = -rhs
        row[art0 + i] = F(1)
        rows.append(row + [rhs])
        signs.append(s)

    tab = _Tableau(rows, [art0 + i for i in range(m)])

    # phase 1: minimize the sum of artificials
    tab.set_costs([F(0)] * art0 + [F(1)] * m)
    tab.run(art0)
    infeas = -tab.z[-1]
    if infeas > 0:
        y = [(F(1) - tab.z[art0 + i]) * signs[i] for i in range(m)]
        return LPResult(status=INFEASIBLE, farkas=primitive(-v for v in y))

    # drive zero-valued artificials out of the basis where possible
    for r in range(m):
        if tab.basis[r] >= art0:
            j = next((j for j in range(art0) if tab.T[r][j] != 0), None)
            if j is not None:
                tab.pivot(r, j)

    sign = -1 if maximize else 1
    cost = [F(0)] * width
    for k, (j, s) in enumerate(colmap):
        cost[k] = sign * s * F(c[j])
    tab.set_costs(cost)
    unb = tab.run(art0)

    if unb is not None:
        d = [F(0)] * width
        d[unb] = F(1)
        for r, b in enumerate(tab.basis):
            d[b] = -tab.T[r][unb]
        ray = [F(0)] * n
        for k, (j, s) in enumerate(colmap):
            ray[j] += s * d[k]
        return LPResult(status=UNBOUNDED, ray=tuple(ray), basis=tuple(tab.basis))

    z = [F(0)] * width
    for r, b in enumerate(tab.basis):
        z[b] = tab.T[r][-1]
    x = [F(0)] * n
    for k, (j, s) in enumerate(colmap):
        x[j] += s * z[k]
    value = sum((F(cj) * xj for cj, xj in zip(c, x)), F(0))
    return LPResult(status=OPTIMAL, x=tuple(x), value=value, basis=tuple(tab.basis))


def check_feasible(x: Sequence, A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   free: Iterable[int] = ()) -> bool:
    """Substitute ``x`` back into every constraint with exact arithmetic."""
    free = set(free)
    if any(xj < 0 for j, xj in enumerate(x) if j not in free):
        return False
    dot = lambda row: sum(Fraction(a) * xj for a, xj in zip(row, x))  # noqa: E731
    return (all(dot(r) == b for r, b in zip(A_eq, b_eq))
            and all(dot(r) <= b for r, b in zip(A_ub, b_ub)))


def check_farkas(y: Sequence, n: int, A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                 A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                 free: Iterable[int] = ()) -> bool:
    """True iff ``y`` proves the system in :func:`lp_solve_exact` form infeasible."""
    free = set(free)
    rows = list(A_eq) + list(A_ub)
    rhs = list(b_eq) + list(b_ub)
    m_eq = len(A_eq)
    if len(y) != len(rows) or any(v < 0 for v in y[m_eq:]):
        return False
    for j in range(n):
        s = sum(Fraction(yi) * r[j] for yi, r in zip(y, rows))
        if (j in free and s != 0) or s < 0:
            return False
    return sum(Fraction(yi) * b for yi, b in zip(y, rhs)) < 0
