"""The cell complex cell(n, w) as a mod-2 chain complex."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .symbols import (
    DEFAULT_MAX_CELLS,
    Symbol,
    check_budget,
    codim1_cofaces,
    enumerate_symbols,
    is_face,
)

log = logging.getLogger(__name__)


def _split_masks(k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    masks = []
    for mask in range(1, (1 << k) - 1):
        left = tuple(t for t in range(k) if mask >> t & 1)
        right = tuple(t for t in range(k) if not mask >> t & 1)
        masks.append((left, right))
    return masks


def face_keys(labels: tuple[int, ...], sizes: tuple[int, ...], _cache: dict = {}):
    """Yield ``(labels, sizes)`` of every codimension-1 face; tuple fast path."""
    start = 0
    for i, k in enumerate(sizes):
        if k >= 2:
            masks = _cache.get(k)
            if masks is None:
                masks = _cache[k] = _split_masks(k)
            block = labels[start:start + k]
            head = labels[:start]
            tail = labels[start + k:]
            sh = sizes[:i]
            st = sizes[i + 1:]
            for left, right in masks:
                yield (head + tuple(block[t] for t in left) + tuple(block[t] for t in right) + tail,
                       sh + (len(left), len(right)) + st)
        start += k


def top_dimension(n: int, w: int) -> int:
    w = min(w, n)
    return n - -(-n // w)


@dataclass
class CellComplex:
    """cell(n, w): cells bucketed by dimension plus sparse mod-2 boundaries.

    ``boundaries[d]`` (for d >= 1) is a pair ``(indptr, indices)`` in
    compressed-column form: the faces of d-cell ``c`` are the (d-1)-cell
    indices ``indices[indptr[c]:indptr[c+1]]``, sorted ascending.
    """

    n: int
    w: int
    cells: list[list[Symbol]]
    boundaries: dict[int, tuple[np.ndarray, np.ndarray]] = field(repr=False)
    _index: list[dict] | None = field(default=None, repr=False)

    @property
    def top_dimension(self) -> int:
        return len(self.cells) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    @property
    def num_cells(self) -> int:
        return sum(self.f_vector)

    def index(self, d: int) -> dict:
        if self._index is None:
            self._index = [
                {(s.labels, s.block_sizes): i for i, s in enumerate(cs)} for cs in self.cells
            ]
        return self._index[d]

    def index_of(self, s: Symbol) -> int:
        return self.index(s.dimension)[(s.labels, s.block_sizes)]

    def boundary(self, d: int, col: int) -> np.ndarray:
        indptr, indices = self.boundaries[d]
        return indices[indptr[col]:indptr[col + 1]]

    def boundary_lists(self, d: int) -> list[list[int]]:
        indptr, indices = self.boundaries[d]
        return [indices[indptr[c]:indptr[c + 1]].tolist() for c in range(len(indptr) - 1)]

    def incidences(self, d: int):
        """Yield ``(row, col)`` pairs of the d-th boundary map."""
        indptr, indices = self.boundaries[d]
        for col in range(len(indptr) - 1):
            for row in indices[indptr[col]:indptr[col + 1]]:
                yield int(row), col

    def without_incidence(self, d: int, col: int, row: int) -> "CellComplex":
        """Copy with one boundary incidence removed (mutation-test fixture)."""
        lists = self.boundary_lists(d)
        lists[col] = [r for r in lists[col] if r != row]
        boundaries = dict(self.boundaries)
        boundaries[d] = _pack(lists)
        return CellComplex(self.n, self.w, self.cells, boundaries, self._index)


def _pack(lists: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(len(lists) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(x) for x in lists])
    indices = np.fromiter(itertools.chain.from_iterable(lists), dtype=np.int32, count=int(indptr[-1]))
    return indptr, indices


def build_complex(n: int, w: int, max_cells: int | None = DEFAULT_MAX_CELLS) -> CellComplex:
    if n < 1 or w < 1:
        raise ValueError("n and w must be at least 1")
    check_budget(n, w, max_cells)
    top = top_dimension(n, w)
    cells: list[list[Symbol]] = [[] for _ in range(top + 1)]
    for s in enumerate_symbols(n, w, max_cells):
        cells[s.dimension].append(s)
    index = [{(s.labels, s.block_sizes): i for i, s in enumerate(cs)} for cs in cells]
    boundaries = {}
    for d in range(1, top + 1):
        lower = index[d - 1]
        lists = []
        for s in cells[d]:
            rows = []
            for key in face_keys(s.labels, s.block_sizes):
                row = lower.get(key)
                # splitting a block never widens it, so every face is admitted
                assert row is not None, f"face {key} of {s} missing from cell({n},{w})"
                rows.append(row)
            rows.sort()
            lists.append(rows)
        boundaries[d] = _pack(lists)
    log.debug("built cell(%d,%d): f-vector %s", n, w, [len(c) for c in cells])
    return CellComplex(n, w, cells, boundaries, index)


def euler_characteristic(c: CellComplex) -> int:
    return sum((-1) ** d * f for d, f in enumerate(c.f_vector))


def vertex_star(v: Symbol, w: int) -> set[Symbol]:
    """All cells of cell(n, w) having ``v`` as a face (including ``v``)."""
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for s in frontier:
            for t in codim1_cofaces(s, w):
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def vertex_link(v: Symbol, w: int = 2):
    """Link of a vertex in the cube complex cell(n, 2).

    Returns ``(graph, simplices)``: link vertices are the edges (1-cells)
    at ``v``; each higher cell ``C`` above ``v`` contributes the simplex of
    edges at ``v`` lying in ``C``.
    """
    star = vertex_star(v, w)
    edges = sorted(s for s in star if s.dimension == 1)
    simplices = {}
    for cell in star:
        if cell.dimension < 1:
            continue
        spanned = frozenset(e for e in edges if is_face(e, cell))
        simplices.setdefault(spanned, []).append(cell)
    graph = nx.Graph()
    graph.add_nodes_from(edges)
    for spanned in simplices:
        if len(spanned) == 2:
            graph.add_edge(*spanned)
    return graph, simplices


def clique_filling(v: Symbol, clique, w: int = 2) -> Symbol | None:
    """The cell above ``v`` whose edges at ``v`` are exactly ``clique``."""
    _, simplices = vertex_link(v, w)
    cells = simplices.get(frozenset(clique))
    if not cells:
        return None
    return cells[0]


def check_links_flag(n: int) -> bool:
    """Gromov's flag condition for every vertex link of cell(n, 2)."""
    w = 2
    for v in (s for s in enumerate_symbols(n, min(w, n)) if s.dimension == 0):
        graph, simplices = vertex_link(v, w)
        # each cube over v must meet v in a genuine simplex
        for spanned, cells in simplices.items():
            if len(cells) != 1 or len(spanned) != cells[0].dimension:
                return False
        for clique in nx.find_cliques(graph):
            if len(clique) >= 2 and frozenset(clique) not in simplices:
                return False
    return True
