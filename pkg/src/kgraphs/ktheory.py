"""Finite-stage K-theory data for graph algebras.

* cokernels ``coker(1 - A^t)`` with canonical coordinates from a Smith form;
* the endomorphism of ``coker(1 - A_2^t)`` induced by ``A_1^t`` for 2-graphs;
* elements of the stationary direct limit ``lim (Z^N, T)`` with decidable
  equality and a bounded positivity search.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from ._boxsearch import RangeIndex, box_images, dedupe_first
from .errors import BoxTooLarge, GeneratorMismatch, WellDefinednessFailure
from .graph import KGraph
from .linalg.intmat import (Matrix, SmithForm, identity, lattice_member, matmul, matpow,
                            matvec, smith_normal_form, stable_kernel, sub, transpose)

FORMAL = "formal generators"
ORDER_ISO = "positive cone (cycle-free graph)"


def one_minus_transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return sub(identity(len(A)), transpose(A))


def _is_nilpotent(A: Sequence[Sequence[int]]) -> bool:
    # a nonnegative matrix is nilpotent iff its digraph has no cycle
    return not any(any(row) for row in matpow(A, len(A))) if len(A) else True


@dataclass(frozen=True)
class CokerPresentation:
    """``Z^N / im B`` presented as ``(+) Z/d_i  (+)  Z^free_rank``.

    ``moduli`` lists one entry per canonical coordinate: ``d > 1`` for a
    torsion summand, ``0`` for a free one. Summands with ``d = 1`` are dropped.
    """

    B: Matrix
    smith: SmithForm
    invariant_factors: tuple[int, ...]
    moduli: tuple[int, ...]
    free_rank: int
    cone_label: str
    cone_generators: tuple[tuple[int, ...], ...]

    @property
    def _keep(self) -> list[int]:
        # rows of U that survive into canonical coordinates
        N = len(self.B)
        d = list(self.invariant_factors) + [0] * (N - len(self.invariant_factors))
        return [i for i in range(N) if d[i] != 1]

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        Ux = matvec(self.smith.U, x)
        return tuple(Ux[i] % m if m else Ux[i] for i, m in zip(self._keep, self.moduli))

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.project(x))

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def describe(self) -> str:
        parts = [f"Z/{m}" for m in self.moduli if m] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def coker_of(B: Sequence[Sequence[int]], cone_label: str = FORMAL) -> CokerPresentation:
    N = len(B)
    snf = smith_normal_form(B, cols=N)
    d = list(snf.invariant_factors) + [0] * (N - len(snf.invariant_factors))
    moduli = tuple(x for x in d if x != 1)
    pres = CokerPresentation(
        B=[list(r) for r in B], smith=snf, invariant_factors=tuple(snf.invariant_factors),
        moduli=moduli, free_rank=sum(1 for x in d if x == 0), cone_label=cone_label,
        cone_generators=())
    gens = tuple(pres.project([int(i == v) for i in range(N)]) for v in range(N))
    return replace(pres, cone_generators=gens)


def coker_presentation(A: Sequence[Sequence[int]]) -> CokerPresentation:
    """Presentation of ``coker(1 - A^t)`` with the images of the basis vectors."""
    label = ORDER_ISO if _is_nilpotent(A) else FORMAL
    return coker_of(one_minus_transpose(A), cone_label=label)


@dataclass(frozen=True)
class CokerEndo:
    presentation: CokerPresentation
    matrix: tuple[tuple[int, ...], ...]  # acts on canonical coordinates (columns)

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        out = [sum(a * x for a, x in zip(row, coords)) for row in self.matrix]
        return tuple(y % m if m else y for y, m in zip(out, self.presentation.moduli))


def induced_coker_endo(g: KGraph) -> CokerEndo:
    """``A_1^t`` acting on ``coker(1 - A_2^t)`` in canonical coordinates."""
    if g.k != 2:
        raise ValueError("induced_coker_endo needs a 2-graph")
    T = transpose(g.matrices[0])
    B = one_minus_transpose(g.matrices[1])
    N = g.N
    for j in range(N):
        col = [B[i][j] for i in range(N)]
        if lattice_member(B, matvec(T, col), cols=N) is None:
            raise WellDefinednessFailure(
                f"A_1^t maps column {j} of 1 - A_2^t outside its image")
    pres = coker_of(B)
    U = pres.smith.U
    keep = pres._keep
    # canonical generator j is U^{-1} e_j
    Uinv = _unimodular_inverse(U)
    cols = []
    for j in keep:
        gen = [Uinv[i][j] for i in range(N)]
        cols.append(pres.project(matvec(T, gen)))
    matrix = tuple(tuple(cols[c][r] for c in range(len(keep))) for r in range(len(keep)))
    return CokerEndo(presentation=pres, matrix=matrix)


def _unimodular_inverse(U: Sequence[Sequence[int]]) -> Matrix:
    n = len(U)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    inv = [[int(x) for x in row[n:]] for row in aug]
    if matmul(U, inv) != identity(n):
        raise ValueError("matrix is not unimodular")
    return inv


# -- stationary direct limits ------------------------------------------------

@dataclass(frozen=True)
class LimitElement:
    """Class of ``vec`` placed at ``stage`` in ``lim (Z^N, generator)``."""

    stage: int
    vec: tuple[int, ...]
    generator: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, stage: int, vec: Sequence[int], generator: Sequence[Sequence[int]]):
        gen = tuple(tuple(int(x) for x in row) for row in generator)
        if len(vec) != len(gen):
            raise ValueError("vector length must match the generator size")
        return cls(int(stage), tuple(int(x) for x in vec), gen)

    def shifted(self, stage: int) -> "LimitElement":
        if stage < self.stage:
            raise ValueError("can only push an element to a later stage")
        vec = matvec(matpow(self.generator, stage - self.stage), self.vec)
        return LimitElement(stage, tuple(vec), self.generator)


def limit_equal(a: LimitElement, b: LimitElement) -> bool:
    if a.generator != b.generator:
        raise GeneratorMismatch("elements live in different direct limits")
    s = max(a.stage, b.stage)
    x, y = a.shifted(s).vec, b.shifted(s).vec
    K = stable_kernel([list(r) for r in a.generator])
    return K.contains([p - q for p, q in zip(x, y)])


@dataclass(frozen=True)
class Positive:
    m: int


@dataclass(frozen=True)
class Undetermined:
    horizon: int


def limit_positive_bounded(a: LimitElement, horizon: int) -> Positive | Undetermined:
    """Least ``m <= horizon`` with ``T^m vec >= 0``; never a negative verdict."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    v = list(a.vec)
    for m in range(horizon + 1):
        if all(x >= 0 for x in v):
            return Positive(m)
        v = matvec(a.generator, v)
    return Undetermined(horizon)


# -- bounded search for the coker(1 - A_2^t) class condition ---------------------

@dataclass(frozen=True)
class Found:
    x: tuple[int, ...]
    y: tuple[int, ...]


@dataclass(frozen=True)
class NotFoundWithinBox:
    box: int


DEFAULT_HALPHA_CAP = 50_000


class HalphaSearch:
    """Reusable bounded search for ``c = (1 - A_1^t) x + (1 - A_2^t) y``.

    Both box images are computed once so many right-hand sides can be tested.
    Within the box, ``(x, y)`` pairs are ordered lexicographically with entries
    running through 0, -1, 1, -2, 2, ...
    """

    def __init__(self, g: KGraph, bound: int, cap: int = DEFAULT_HALPHA_CAP):
        if g.k != 2:
            raise ValueError("halpha_class_test needs a 2-graph")
        if bound < 0:
            raise ValueError("box bound must be >= 0")
        if (2 * bound + 1) ** g.N > cap:
            raise BoxTooLarge(f"(2B+1)^N = {(2 * bound + 1) ** g.N} exceeds cap {cap}")
        self.g, self.bound = g, bound
        self.B1 = one_minus_transpose(g.matrices[0])
        self.B2 = one_minus_transpose(g.matrices[1])
        self.coker2 = coker_of(self.B2)
        xs, img1 = box_images(np.array(self.B1), bound, g.N)
        self.ys, img2 = box_images(np.array(self.B2), bound, g.N)
        self.img1, first1 = dedupe_first(img1)
        self.xs = xs[first1]
        self.img2, first2 = dedupe_first(img2)
        self.first2 = first2
        self.index = RangeIndex(self.img2)

    def _found(self, i: int, j: int) -> Found:
        return Found(tuple(int(v) for v in self.xs[i]),
                     tuple(int(v) for v in self.ys[self.first2[j]]))

    def test(self, c: Sequence[int]) -> Found | NotFoundWithinBox:
        c = [int(v) for v in c]
        N = self.g.N
        if len(c) != N or any(v < 0 for v in c):
            raise ValueError("c must be a nonnegative vector of length N")
        if self.coker2.is_zero(c):
            return NotFoundWithinBox(self.bound)
        idx = self.index.index_of(np.asarray(c, dtype=np.int64) - self.img1)
        hits = np.flatnonzero(idx >= 0)
        if not len(hits):
            return NotFoundWithinBox(self.bound)
        # img1 rows are in search order, so the first hit gives the least (x, y)
        return self._found(int(hits[0]), int(idx[hits[0]]))

    def scan(self, top: int) -> dict[tuple[int, ...], Found]:
        """Every ``c`` in ``[0, top]^N`` with nonzero class that the box reaches."""
        out: dict[tuple[int, ...], Found] = {}
        acc = self.index.mask(lower=-self.img1, upper=top - self.img1)
        for i in np.flatnonzero(acc.any(axis=1)):
            for j in RangeIndex.members(acc[i]):
                c = tuple(int(v) for v in self.img1[i] + self.img2[j])
                if c not in out and not self.coker2.is_zero(c):
                    out[c] = self._found(int(i), int(j))
        return out


def halpha_class_test(g: KGraph, c: Sequence[int], box: int) -> Found | NotFoundWithinBox:
    """Search ``x, y`` in ``[-box, box]^N`` with ``c = (1-A_1^t)x + (1-A_2^t)y``
    where ``c`` has nonzero class in ``coker(1 - A_2^t)``."""
    return HalphaSearch(g, box).test(c)
