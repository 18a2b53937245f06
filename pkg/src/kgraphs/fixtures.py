"""Small hand-built graphs with known answers.

Each entry gives the coordinate matrices and the expected certificate kind:
``"trace"`` or ``"witness"``. The expectations were worked out by hand and
are cross-checked against the box oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import KGraph, make_kgraph
from .linalg.intmat import identity, matmul, matpow


@dataclass(frozen=True)
class Fixture:
    name: str
    matrices: tuple
    expect: str          # "trace" or "witness"
    cofinal: bool

    def graph(self) -> KGraph:
        return make_kgraph([[list(r) for r in A] for A in self.matrices])


def _cyc(n: int, shift: int = 1):
    return [[int(w == (v + shift) % n) for w in range(n)] for v in range(n)]


def _kron(A, B):
    n, m = len(A), len(B)
    return [[A[i // m][j // m] * B[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def _add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


I1, I2, I3 = identity(1), identity(2), identity(3)
SWAP = _cyc(2)
P3, P4 = _cyc(3), _cyc(4)

FIXTURES: tuple[Fixture, ...] = (
    Fixture("single-loops", ([[1]], [[1]]), "trace", True),
    Fixture("double-blue-loop", ([[2]], [[1]]), "witness", True),
    Fixture("double-loops", ([[2]], [[2]]), "witness", True),
    Fixture("swap-identity", (SWAP, I2), "trace", True),
    Fixture("swap-swap", (SWAP, SWAP), "trace", True),
    Fixture("blue-loop-with-entrance", ([[1, 1], [0, 1]], I2), "witness", False),
    Fixture("feeder-vertex", ([[0, 2], [0, 1]], I2), "trace", True),
    Fixture("two-components", (I2, I2), "trace", False),
    Fixture("all-ones-blue", ([[1, 1], [1, 1]], I2), "witness", True),
    Fixture("all-ones-both", ([[1, 1], [1, 1]], [[1, 1], [1, 1]]), "witness", True),
    Fixture("three-cycle-square", (P3, matmul(P3, P3)), "trace", True),
    Fixture("three-cycle-identity", (P3, I3), "trace", True),
    Fixture("three-cycle-plus-identity", (P3, _add(P3, I3)), "witness", True),
    Fixture("four-cycle-half-turn", (P4, matpow(P4, 2)), "trace", True),
    Fixture("torus-2x3", (_kron(SWAP, I3), _kron(I2, P3)), "trace", True),
    Fixture("loop-beside-double-loop", ([[2, 0], [0, 1]], I2), "witness", False),
    Fixture("lower-triangular-entrance", ([[1, 0], [1, 1]], I2), "witness", False),
    Fixture("rank-one-one-vertex", ([[1]],), "trace", True),
    Fixture("rank-one-entrance", ([[1, 1], [0, 1]],), "witness", False),
    Fixture("rank-three-loops", ([[1]], [[1]], [[1]]), "trace", True),
)


def fixture(name: str) -> Fixture:
    return next(f for f in FIXTURES if f.name == name)
