"""Brute-force cross-checks and seeded random instances.

``box_witness_search`` never touches the LP: it enumerates a box of integer
vectors and so gives an independent check of ``decide_condition``.

Box order. Each entry runs through ``0, -1, 1, -2, 2, ...`` and tuples are
compared lexicographically in that order, so the search returns the first
witness with small entries. The full variable vector is ``x_1 | ... | x_k``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoxTooLarge, GenerationFailed
from .graph import KGraph, make_kgraph
from ._boxsearch import RangeIndex, box_images, dedupe_first
from .linalg.intmat import identity, matmul

DEFAULT_BOX_CAP = 10**9
STRATEGIES = ("polynomial", "permutation", "rejection")


# -- exhaustive witness search --------------------------------------------------

@dataclass(frozen=True)
class BoxWitness:
    xs: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]


def _condition_columns(g: KGraph) -> np.ndarray:
    # column i*N + w is (1 - A_i^t) e_w, written out from the matrices directly
    N = g.N
    M = np.zeros((N, g.k * N), dtype=np.int64)
    for i, A in enumerate(g.matrices):
        At = np.array(A, dtype=np.int64).T
        M[:, i * N:(i + 1) * N] = np.eye(N, dtype=np.int64) - At
    return M


def box_witness_search(g: KGraph, B: int, cap: int = DEFAULT_BOX_CAP,
                       chunk: int = 2048) -> BoxWitness | None:
    """First ``(x_1, ..., x_k)`` in ``[-B, B]^{kN}`` with ``sum (1 - A_i^t) x_i >= 0, != 0``."""
    if B < 0:
        raise ValueError("B must be >= 0")
    n = g.k * g.N
    if (2 * B + 1) ** n > cap:
        raise BoxTooLarge(f"(2B+1)^(kN) = {(2 * B + 1) ** n} exceeds cap {cap}")
    M = _condition_columns(g)
    h = n // 2
    xl, img_l = box_images(M[:, :h], B, h)
    xr, img_r = box_images(M[:, h:], B, n - h)
    left, left_first = dedupe_first(img_l)
    right, _ = dedupe_first(img_r)
    index = RangeIndex(right)
    for lo in range(0, len(left), chunk):
        q = -left[lo:lo + chunk]
        acc = index.mask(lower=q)
        # b = -a gives c = 0, which does not count
        eq = index.index_of(q)
        rows = np.flatnonzero(eq >= 0)
        index.clear(acc, rows, eq[rows])
        hits = np.flatnonzero(acc.any(axis=1))
        if len(hits):
            a = left[lo + hits[0]]
            c_all = img_r + a
            ok = (c_all >= 0).all(axis=1) & c_all.any(axis=1)
            j = int(np.flatnonzero(ok)[0])
            x = [int(v) for v in np.concatenate([xl[left_first[lo + hits[0]]], xr[j]])]
            xs = tuple(tuple(x[i * g.N:(i + 1) * g.N]) for i in range(g.k))
            return BoxWitness(xs=xs, c=tuple(int(v) for v in c_all[j]))
    return None


# -- random instances -----------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    N: int
    max_entry: int = 2
    k: int = 2
    strategy: str = "polynomial"
    max_attempts: int = 2000

    def __post_init__(self):
        if self.N < 1 or self.max_entry < 1 or self.k < 1:
            raise ValueError("need N >= 1, max_entry >= 1 and k >= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")


def _fill_zero_rows(rng: random.Random, A: list[list[int]]) -> list[list[int]]:
    for row in A:
        if not any(row):
            row[rng.randrange(len(row))] = 1
    return A


def _sparse_matrix(rng: random.Random, N: int, max_entry: int, density: float) -> list[list[int]]:
    return [[rng.randint(1, max_entry) if rng.random() < density else 0 for _ in range(N)]
            for _ in range(N)]


def _bounded(A: Sequence[Sequence[int]], max_entry: int) -> bool:
    return all(0 <= x <= max_entry for row in A for x in row)


def _add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def _polynomial(rng: random.Random, cfg: GeneratorConfig) -> list[list[list[int]]]:
    N, top = cfg.N, cfg.max_entry
    C = _fill_zero_rows(rng, _sparse_matrix(rng, N, top, rng.choice([0.2, 0.35, 0.5])))
    powers = [identity(N), C, matmul(C, C)]
    mats = []
    for _ in range(cfg.k):
        for _ in range(50):
            coeffs = [rng.randint(0, 1) for _ in powers]
            if not any(coeffs):
                continue
            P = [[0] * N for _ in range(N)]
            for a, Q in zip(coeffs, powers):
                if a:
                    P = _add(P, [[a * x for x in row] for row in Q])
            if any(not any(row) for row in P):
                P = _add(P, identity(N))
            if _bounded(P, top):
                break
        else:
            P = [list(r) for r in rng.choice([identity(N), C])]
        mats.append(P)
    return mats


def _perm_matrix(p: Sequence[int]) -> list[list[int]]:
    return [[int(p[v] == w) for w in range(len(p))] for v in range(len(p))]


def _permutation(rng: random.Random, cfg: GeneratorConfig) -> list[list[list[int]]]:
    # powers of one permutation commute; identity shifts keep commutation
    N, top = cfg.N, cfg.max_entry
    p = list(range(N))
    rng.shuffle(p)
    P = _perm_matrix(p)
    mats = []
    for _ in range(cfg.k):
        A = identity(N)
        for _ in range(rng.randrange(N)):
            A = matmul(A, P)
        s = rng.choice([0, 0, 0, 1])
        S = _add(A, [[s * int(v == w) for w in range(N)] for v in range(N)])
        mats.append(S if _bounded(S, top) else A)
    return mats


def _commute(A, B) -> bool:
    return matmul(A, B) == matmul(B, A)


def _rejection(rng: random.Random, cfg: GeneratorConfig) -> list[list[list[int]]]:
    N, top = cfg.N, cfg.max_entry
    density = 1.5 / N
    mats = [_fill_zero_rows(rng, _sparse_matrix(rng, N, top, density))]
    for _ in range(1, cfg.k):
        for _ in range(cfg.max_attempts):
            A = _fill_zero_rows(rng, _sparse_matrix(rng, N, top, density))
            if all(_commute(A, B) for B in mats):
                mats.append(A)
                break
        else:
            raise GenerationFailed(
                f"no commuting sample in {cfg.max_attempts} tries (seed {cfg.seed}, N={N})")
    return mats


_BUILDERS = {"polynomial": _polynomial, "permutation": _permutation, "rejection": _rejection}


def random_kgraph(cfg: GeneratorConfig) -> KGraph:
    rng = random.Random(cfg.seed)
    return make_kgraph(_BUILDERS[cfg.strategy](rng, cfg))


def random_digraph(cfg: GeneratorConfig) -> KGraph:
    rng = random.Random(cfg.seed)
    density = rng.choice([0.2, 0.35, 0.5])
    A = _fill_zero_rows(rng, _sparse_matrix(rng, cfg.N, cfg.max_entry, density))
    return make_kgraph([A])


# -- corpora ------------------------------------------------------------------------

def corpus_configs(count: int, seed: int = 0, k: int = 2, max_N: int = 6,
                   max_entry: int = 2) -> Iterator[GeneratorConfig]:
    """Cycle through the strategies; rejection sampling only at N <= 3."""
    rng = random.Random(seed)
    for i in range(count):
        strategy = STRATEGIES[i % 3]
        hi = min(max_N, 3) if strategy == "rejection" else max_N
        yield GeneratorConfig(seed=rng.getrandbits(64), N=rng.randint(1, hi),
                              max_entry=max_entry, k=k, strategy=strategy)


def _generate_with_retry(cfg: GeneratorConfig, retries: int = 20) -> KGraph:
    # failed rejection runs move on to the next seed, so the corpus stays seed-determined
    for r in range(retries):
        try:
            return random_kgraph(replace(cfg, seed=(cfg.seed + r) % 2**64))
        except GenerationFailed:
            continue
    return random_kgraph(replace(cfg, strategy="polynomial"))


def random_corpus(count: int, seed: int = 0, k: int = 2, max_N: int = 6,
                  max_entry: int = 2) -> list[KGraph]:
    return [_generate_with_retry(cfg)
            for cfg in corpus_configs(count, seed, k, max_N, max_entry)]


def digraph_corpus(count: int, seed: int = 0, max_N: int = 6, max_entry: int = 2) -> list[KGraph]:
    rng = random.Random(seed)
    return [random_digraph(GeneratorConfig(seed=rng.getrandbits(64), N=rng.randint(1, max_N),
                                           max_entry=max_entry, k=1))
            for _ in range(count)]


def dump_jsonl(graphs: Iterable[KGraph]) -> str:
    return "".join(json.dumps(g.to_json(), separators=(",", ":")) + "\n" for g in graphs)


def load_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]
