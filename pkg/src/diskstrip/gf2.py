"""Linear algebra over the two-element field.

Columns are bit-packed into Python integers (bit ``i`` set means row ``i``
has a one), which keeps column additions inside CPython's big-int XOR.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import CellComplex, euler_characteristic

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise ValueError(f"expected {self.cols} columns, got {len(self.columns)}")
        for c in self.columns:
            if c < 0 or c.bit_length() > self.rows:
                raise ValueError("column has bits outside the row range")

    @classmethod
    def from_column_lists(cls, rows: int, lists: Iterable[Iterable[int]]) -> "BitMatrix":
        columns = []
        for entries in lists:
            v = 0
            for r in entries:
                v ^= 1 << int(r)
            columns.append(v)
        return cls(rows, len(columns), tuple(columns))

    @classmethod
    def from_dense(cls, array) -> "BitMatrix":
        a = np.asarray(array, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_column_lists(a.shape[0], (np.flatnonzero(a[:, j]) for j in range(a.shape[1])))

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(size, size, tuple(1 << i for i in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * cols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for j, c in enumerate(self.columns):
            while c:
                low = c.bit_length() - 1
                out[low, j] = 1
                c ^= 1 << low
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for c in other.columns:
            acc = 0
            while c:
                low = c.bit_length() - 1
                acc ^= self.columns[low]
                c ^= 1 << low
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def rank(self) -> int:
        return rank(self)


def reduce_columns(columns: Iterable[int], skip: Sequence[bool] | None = None) -> dict[int, int]:
    """Left-to-right column reduction; returns ``{pivot_row: column_index}``.

    A column is added to the earlier column sharing its lowest one until its
    lowest one is new or the column vanishes.  Columns flagged in ``skip``
    are known to reduce to zero and are not touched.
    """
    pivots: dict[int, int] = {}
    reduced: dict[int, int] = {}
    for j, col in enumerate(columns):
        if skip is not None and skip[j]:
            continue
        while col:
            low = col.bit_length() - 1
            other = reduced.get(low)
            if other is None:
                reduced[low] = col
                pivots[low] = j
                break
            col ^= other
    return pivots


def rank(m: BitMatrix) -> int:
    return len(reduce_columns(m.columns))


def boundary_matrix(c: CellComplex, d: int) -> BitMatrix:
    """The d-th boundary map as a BitMatrix ((d-1)-cells x d-cells)."""
    if d <= 0 or d > c.top_dimension:
        rows = len(c.cells[d - 1]) if 0 < d <= c.top_dimension + 1 else 0
        cols = len(c.cells[d]) if 0 <= d <= c.top_dimension else 0
        return BitMatrix.zeros(rows, cols)
    return BitMatrix.from_column_lists(len(c.cells[d - 1]), c.boundary_lists(d))


def _columns(c: CellComplex, d: int, order: Sequence[int] | None = None):
    indptr, indices = c.boundaries[d]
    cols = range(len(indptr) - 1) if order is None else order
    for col in cols:
        v = 0
        for r in indices[indptr[col]:indptr[col + 1]].tolist():
            v |= 1 << r
        yield v


@dataclass(frozen=True)
class BettiTable:
    n: int
    w: int
    betti: tuple[int, ...]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    def rows(self) -> list[tuple[int, int, int, int]]:
        return [(self.n, self.w, j, b) for j, b in enumerate(self.betti)]


def boundary_ranks(c: CellComplex, clearing: bool = True, rng: np.random.Generator | None = None) -> dict[int, int]:
    """Ranks of all boundary maps, highest dimension first.

    With ``clearing``, a (d-1)-cell already found as the pivot of a reduced
    d-column is a cycle that reduces to zero in the next map down, so its
    column is skipped.  ``rng`` permutes the column order (determinism
    checks only).
    """
    ranks = {}
    cleared: set[int] = set()
    for d in range(c.top_dimension, 0, -1):
        ncols = len(c.cells[d])
        order = None if rng is None else rng.permutation(ncols).tolist()
        skip = None
        if clearing and cleared:
            flags = [False] * ncols
            for j in cleared:
                flags[j] = True
            skip = flags if order is None else [flags[j] for j in order]
        pivots = reduce_columns(_columns(c, d, order), skip)
        ranks[d] = len(pivots)
        # pivot rows are (d-1)-cells that bound; their own columns vanish
        cleared = set(pivots) if clearing else set()
        log.debug("cell(%d,%d): rank of boundary %d = %d", c.n, c.w, d, ranks[d])
    return ranks


def betti_numbers(c: CellComplex, **kwargs) -> BettiTable:
    ranks = boundary_ranks(c, **kwargs)
    betti = []
    for d, f in enumerate(c.f_vector):
        betti.append(f - ranks.get(d, 0) - ranks.get(d + 1, 0))
    table = BettiTable(c.n, c.w, tuple(betti))
    assert table.euler_characteristic() == euler_characteristic(c)
    return table


def verify_chain_complex(c: CellComplex) -> bool:
    """True iff every composite of consecutive boundary maps vanishes mod 2."""
    for d in range(2, c.top_dimension + 1):
        upper = boundary_matrix(c, d)
        lower = boundary_matrix(c, d - 1)
        if not (lower @ upper).is_zero():
            return False
    return True
