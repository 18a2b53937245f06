"""Shared machinery for exhaustive searches over integer boxes."""

from __future__ import annotations

import itertools

import numpy as np


def box_values(bound: int) -> list[int]:
    """``[-bound, bound]`` in search order: 0, -1, 1, -2, 2, ..."""
    return sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v))


def box_images(M: np.ndarray, bound: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All ``x`` in ``[-bound, bound]^n`` in search order, with images ``M x`` as rows."""
    rows = list(itertools.product(box_values(bound), repeat=n))
    xs = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return xs, xs @ M.T.astype(np.int64)


def dedupe_first(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows of ``img`` ordered by first occurrence, with those first indices."""
    _, first = np.unique(img, axis=0, return_index=True)
    first.sort()
    return img[first], first


def void_rows(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


class RangeIndex:
    """Bitset index over the rows of an integer table.

    ``mask(lower, upper)`` returns, per query, the set of table rows ``b`` with
    ``lower <= b <= upper`` componentwise, packed into uint64 words.
    """

    def __init__(self, table: np.ndarray):
        self.table = table
        m, D = table.shape
        self.size = m
        self.words = max(1, -(-m // 64))
        self.levels, self.ge, self.le = [], [], []
        for j in range(D):
            u = np.unique(table[:, j])
            self.levels.append(u)
            self.ge.append(self._pack(table[None, :, j] >= u[:, None], bottom=True))
            self.le.append(self._pack(table[None, :, j] <= u[:, None], bottom=False))
        order = np.argsort(void_rows(table), kind="stable")
        self._sorted = void_rows(table)[order]
        self._order = order

    def _pack(self, bits: np.ndarray, bottom: bool) -> np.ndarray:
        packed = np.packbits(bits, axis=1, bitorder="little")
        packed = np.pad(packed, ((0, 0), (0, self.words * 8 - packed.shape[1])))
        empty = np.zeros((1, packed.shape[1]), dtype=np.uint8)
        # one extra all-zero level past either end for out-of-range queries
        packed = np.vstack([packed, empty]) if bottom else np.vstack([empty, packed])
        return np.ascontiguousarray(packed).view(np.uint64)

    def mask(self, lower: np.ndarray | None = None,
             upper: np.ndarray | None = None) -> np.ndarray:
        q = len(lower if lower is not None else upper)
        acc = np.full((q, self.words), np.uint64(2**64 - 1))
        for j, u in enumerate(self.levels):
            if lower is not None:
                acc &= self.ge[j][np.searchsorted(u, lower[:, j], side="left")]
            if upper is not None:
                acc &= self.le[j][np.searchsorted(u, upper[:, j], side="right")]
        return acc

    def index_of(self, q: np.ndarray) -> np.ndarray:
        """Row index of each query in the table, or -1."""
        if self.size == 0:
            return np.full(len(q), -1)
        keys = void_rows(q)
        pos = np.minimum(np.searchsorted(self._sorted, keys), self.size - 1)
        return np.where(self._sorted[pos] == keys, self._order[pos], -1)

    @staticmethod
    def clear(acc: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> None:
        acc[rows, cols // 64] &= ~(np.uint64(1) << (cols % 64).astype(np.uint64))

    @staticmethod
    def members(word_row: np.ndarray) -> np.ndarray:
        bits = np.unpackbits(word_row.view(np.uint8), bitorder="little")
        return np.flatnonzero(bits)
