"""Exact integer matrices: Hermite and Smith normal forms, lattices, kernels.

Matrices are plain lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def shape(A: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    rows = len(A)
    if rows == 0:
        return 0, cols or 0
    return rows, len(A[0])


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in A]


def transpose(A: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    m, n = shape(A, cols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    n = len(B)
    p = len(B[0]) if n else 0
    Bt = transpose(B, p)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def matpow(A: Sequence[Sequence[int]], e: int) -> Matrix:
    result = identity(len(A))
    base = copy(A)
    while e > 0:
        if e & 1:
            result = matmul(result, base)
        e >>= 1
        if e:
            base = matmul(base, base)
    return result


def sub(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    M = copy(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def format_matrix(A: Sequence[Sequence[int]]) -> str:
    """Row-major decimal text, one row per line."""
    return "\n".join(" ".join(str(x) for x in row) for row in A)


# -- column operations shared by the Hermite and Smith routines -------------

def _col_combine(M: Matrix, p: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_p, col_j) <- (a*col_p + b*col_j, c*col_p + d*col_j)
    for row in M:
        x, y = row[p], row[j]
        row[p] = a * x + b * y
        row[j] = c * x + d * y


def _row_combine(M: Matrix, p: int, j: int, a: int, b: int, c: int, d: int) -> None:
    rp, rj = M[p], M[j]
    M[p] = [a * x + b * y for x, y in zip(rp, rj)]
    M[j] = [c * x + d * y for x, y in zip(rp, rj)]


@dataclass(frozen=True)
class HermiteForm:
    H: Matrix
    U: Matrix
    rank: int
    pivots: tuple[tuple[int, int], ...]  # (row, col) of each pivot
    side: str


def _column_hermite(A: Sequence[Sequence[int]], cols: int | None = None) -> HermiteForm:
    m, n = shape(A, cols)
    H = copy(A) if m else []
    U = identity(n)
    p = 0
    pivots = []
    for i in range(m):
        if p == n:
            break
        for j in range(p + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][p]
            g, s, t = xgcd(a, b)
            c, d = -b // g, a // g
            _col_combine(H, p, j, s, t, c, d)
            _col_combine(U, p, j, s, t, c, d)
        piv = H[i][p]
        if piv == 0:
            continue
        if piv < 0:
            for M in (H, U):
                for row in M:
                    row[p] = -row[p]
            piv = -piv
        for l in range(p):
            q = H[i][l] // piv
            if q:
                for M in (H, U):
                    for row in M:
                        row[l] -= q * row[p]
        pivots.append((i, p))
        p += 1
    return HermiteForm(H=H, U=U, rank=p, pivots=tuple(pivots), side="column")


def hermite_normal_form(A: Sequence[Sequence[int]], side: str = "column",
                        cols: int | None = None) -> HermiteForm:
    """Canonical Hermite form of an integer matrix.

    ``side="column"`` gives ``H = A @ U`` in column echelon form (pivots
    positive, entries left of a pivot reduced into ``[0, pivot)``); it is an
    invariant of the lattice spanned by the columns. ``side="row"`` gives
    ``H = U @ A`` in row echelon form and depends only on the row lattice.
    ``U`` is unimodular in both cases.
    """
    if side == "column":
        return _column_hermite(A, cols)
    if side == "row":
        m, n = shape(A, cols)
        hf = _column_hermite(transpose(A, n), m)
        return HermiteForm(
            H=transpose(hf.H, m), U=transpose(hf.U, m), rank=hf.rank,
            pivots=tuple((c, r) for r, c in hf.pivots), side="row")
    raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class SmithForm:
    """``D = U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: Matrix
    D: Matrix
    V: Matrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    m, n = shape(A, cols)
    D = copy(A) if m else []
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return _finish_smith(U, D, V, m, n)
            _, i, j = best
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                for M in (D, V):
                    for row in M:
                        row[t], row[j] = row[j], row[t]
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    for M in (D, V):
                        for row in M:
                            row[j] -= q * row[t]
                if D[t][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % piv), None)
            if bad is None:
                break
            i = bad[0]
            D[t] = [x + y for x, y in zip(D[t], D[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return _finish_smith(U, D, V, m, n)


def _finish_smith(U: Matrix, D: Matrix, V: Matrix, m: int, n: int) -> SmithForm:
    factors = tuple(D[i][i] for i in range(min(m, n)))
    return SmithForm(U=U, D=D, V=V, invariant_factors=factors)


def lattice_member(A: Sequence[Sequence[int]], b: Sequence[int],
                   cols: int | None = None) -> Vector | None:
    """Return an integer ``x`` with ``A @ x == b``, or ``None`` if none exists."""
    m, n = shape(A, cols)
    if len(b) != m:
        raise ValueError("dimension mismatch between A and b")
    hf = hermite_normal_form(A, cols=n)
    H = hf.H
    residual = list(map(int, b))
    y = [0] * n
    pivot_of_row = dict(hf.pivots)
    for i in range(m):
        j = pivot_of_row.get(i)
        if j is None:
            if residual[i] != 0:
                return None
            continue
        q, r = divmod(residual[i], H[i][j])
        if r:
            return None
        y[j] = q
        for r_ in range(i, m):
            residual[r_] -= q * H[r_][j]
    return matvec(hf.U, y)


def kernel_basis(A: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """A saturated Z-basis of ``{x : A x = 0}``, one vector per row.

    The basis is returned in row Hermite form, so it is canonical.
    """
    m, n = shape(A, cols)
    hf = hermite_normal_form(A, cols=n)
    vecs = [[hf.U[i][j] for i in range(n)] for j in range(hf.rank, n)]
    if not vecs:
        return []
    return hermite_normal_form(vecs, side="row", cols=n).H


@dataclass(frozen=True)
class StableKernel:
    """The eventual kernel ``union_m ker A^m`` of a square integer matrix."""

    matrix: Matrix
    power: int  # least m with ker A^m = ker A^(m+1)
    basis: Matrix
    iterations: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, x: Sequence[int]) -> bool:
        return not any(matvec(matpow(self.matrix, self.power), x))


def stable_kernel(A: Sequence[Sequence[int]]) -> StableKernel:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("stable_kernel needs a square matrix")
    power, P = 0, identity(n)
    basis: Matrix = []
    iterations = 0
    while True:
        iterations += 1
        nxt = matmul(P, A) if power else copy(A)
        nb = kernel_basis(nxt, cols=n)
        if len(nb) == len(basis):
            return StableKernel(matrix=copy(A), power=power, basis=basis,
                                iterations=iterations)
        power, P, basis = power + 1, nxt, nb
