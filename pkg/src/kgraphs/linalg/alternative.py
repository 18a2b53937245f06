"""Stiemke's alternative for an integer matrix, decided by exact LP.

For ``M`` of shape N x P exactly one of the following holds:

* there is ``x`` in Z^P with ``M x >= 0`` and ``M x != 0``;
* there is ``xi`` in Q^N, strictly positive, with ``M^T xi == 0``.

Each branch certifies that the other is impossible: ``xi . (M x) = 0`` for every
``x``, which cannot happen when ``xi > 0`` and ``M x`` is a nonzero nonnegative
vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..errors import EmptyDimension, InternalError
from .lp import INFEASIBLE, OPTIMAL, LPResult, lp_solve_exact


@dataclass(frozen=True)
class Witness:
    x: tuple[int, ...]
    Mx: tuple[int, ...]


@dataclass(frozen=True)
class PositiveKernel:
    xi: tuple[Fraction, ...]


Alternative = Witness | PositiveKernel


def kernel_program(M: Sequence[Sequence[int]], P: int) -> dict:
    """LP data for: maximize t s.t. M^T xi = 0, sum xi = 1, xi_v >= t, xi >= 0."""
    N = len(M)
    c = [0] * N + [1]
    A_eq = [[M[v][p] for v in range(N)] + [0] for p in range(P)]
    A_eq.append([1] * N + [0])
    b_eq = [0] * P + [1]
    A_ub = [[-(u == v) for u in range(N)] + [1] for v in range(N)]
    b_ub = [0] * N
    return dict(c=c, A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub, free=[N])


def witness_program(M: Sequence[Sequence[int]], P: int) -> dict:
    """LP data for the rational witness system: M x >= 0, 1^T M x >= 1, x free."""
    N = len(M)
    A_ub = [[-M[v][p] for p in range(P)] for v in range(N)]
    A_ub.append([-sum(M[v][p] for v in range(N)) for p in range(P)])
    b_ub = [0] * N + [-1]
    return dict(c=[0] * P, A_ub=A_ub, b_ub=b_ub, free=list(range(P)))


def solve_kernel_program(M: Sequence[Sequence[int]], P: int) -> LPResult:
    return lp_solve_exact(**kernel_program(M, P))


def solve_witness_program(M: Sequence[Sequence[int]], P: int) -> LPResult:
    return lp_solve_exact(**witness_program(M, P))


def stiemke_alternative(M: Sequence[Sequence[int]], cols: int | None = None) -> Alternative:
    N = len(M)
    if N == 0:
        raise EmptyDimension("stiemke_alternative needs at least one row")
    P = len(M[0]) if cols is None else cols
    if P == 0:
        return PositiveKernel(xi=tuple(Fraction(1) for _ in range(N)))

    res = solve_kernel_program(M, P)
    if res.status == OPTIMAL and res.value > 0:
        return PositiveKernel(xi=tuple(res.x[:N]))

    res = solve_witness_program(M, P)
    if res.status == INFEASIBLE:
        raise InternalError("both sides of the Stiemke alternative are infeasible")
    den = lcm(*(q.denominator for q in res.x))
    x = tuple(int(q * den) for q in res.x)
    Mx = tuple(sum(M[v][p] * x[p] for p in range(P)) for v in range(N))
    if any(c < 0 for c in Mx) or not any(Mx):
        raise InternalError("witness program returned an invalid point")
    return Witness(x=x, Mx=Mx)
