"""Symbols: permutations of 1..n cut into ordered blocks by bars.

A symbol indexes one cell of the Salvetti-type complex.  Blocks are stored
as a flat label tuple plus a tuple of block sizes; the canonical text form
writes labels separated by single spaces and blocks separated by ``|``,
e.g. ``"3 1|2"``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_CELLS = 10**7


class SymbolError(ValueError):
    """Raised for malformed symbol text or invalid label/block data."""


class BudgetExceeded(RuntimeError):
    """Raised when a requested enumeration would exceed the cell budget."""


@dataclass(frozen=True)
class Symbol:
    labels: tuple[int, ...]
    block_sizes: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        sizes = tuple(int(x) for x in self.block_sizes)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "block_sizes", sizes)
        n = len(labels)
        if sorted(labels) != list(range(1, n + 1)):
            raise SymbolError(f"labels {labels} are not a permutation of 1..{n}")
        if any(k < 1 for k in sizes) or sum(sizes) != n:
            raise SymbolError(f"block sizes {sizes} do not partition {n} labels")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Sequence[int]]) -> "Symbol":
        blocks = [tuple(b) for b in blocks]
        return cls(tuple(itertools.chain.from_iterable(blocks)), tuple(len(b) for b in blocks))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = []
        start = 0
        for k in self.block_sizes:
            out.append(self.labels[start:start + k])
            start += k
        return tuple(out)

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def dimension(self) -> int:
        return self.n - len(self.block_sizes)

    @property
    def width(self) -> int:
        """Largest block size."""
        return max(self.block_sizes)

    @cached_property
    def text(self) -> str:
        return format_symbol(self)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Symbol({self.text!r})"

    def __lt__(self, other: "Symbol") -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.text < other.text

    def __le__(self, other: "Symbol") -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.text <= other.text

    def __gt__(self, other: "Symbol") -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.text > other.text

    def __ge__(self, other: "Symbol") -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.text >= other.text


_BLOCK_RE = re.compile(r"^[0-9]+( [0-9]+)*$")


def format_symbol(s: Symbol) -> str:
    return "|".join(" ".join(str(x) for x in block) for block in s.blocks)


def parse_symbol(text: str, n: int | None = None) -> Symbol:
    """Parse canonical symbol text such as ``"3 1|2"``.

    Spaces around bars are tolerated.  When ``n`` is given the labels must
    form a permutation of ``1..n``.
    """
    if not isinstance(text, str):
        raise SymbolError(f"expected a string, got {type(text).__name__}")
    pieces = text.strip().split("|")
    blocks = []
    for piece in pieces:
        piece = piece.strip()
        if not piece:
            raise SymbolError(f"empty block in {text!r}")
        if not _BLOCK_RE.match(piece):
            raise SymbolError(f"malformed block {piece!r} in {text!r}")
        blocks.append(tuple(int(tok) for tok in piece.split(" ")))
    labels = [x for b in blocks for x in b]
    if n is None:
        n = len(labels)
    if len(labels) != n:
        raise SymbolError(f"{text!r} has {len(labels)} labels, expected {n}")
    if len(set(labels)) != n:
        raise SymbolError(f"repeated label in {text!r}")
    if any(x < 1 or x > n for x in labels):
        raise SymbolError(f"label out of range 1..{n} in {text!r}")
    return Symbol.from_blocks(blocks)


def dimension(s: Symbol) -> int:
    return s.dimension


def compositions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``n`` with every part at most ``max_part``."""
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_part) + 1):
        for rest in compositions(n - first, max_part):
            yield (first,) + rest


def count_compositions(n: int, max_part: int) -> int:
    counts = [1] + [0] * n
    for total in range(1, n + 1):
        counts[total] = sum(counts[total - k] for k in range(1, min(total, max_part) + 1))
    return counts[n]


def predicted_cell_count(n: int, w: int) -> int:
    """Number of symbols with block sizes at most ``w`` (no enumeration)."""
    return math.factorial(n) * count_compositions(n, min(w, n))


def check_budget(n: int, w: int, max_cells: int | None = DEFAULT_MAX_CELLS) -> int:
    count = predicted_cell_count(n, w)
    if max_cells is not None and count > max_cells:
        raise BudgetExceeded(
            f"cell({n},{w}) has {count} cells, above the budget of {max_cells}"
        )
    return count


def iter_symbols(n: int, w: int) -> Iterator[Symbol]:
    """All symbols of P(n, w), in no particular order (cheap, streaming)."""
    if n < 1 or w < 1:
        raise SymbolError("n and w must be at least 1")
    comps = list(compositions(n, min(w, n)))
    for perm in itertools.permutations(range(1, n + 1)):
        for comp in comps:
            yield Symbol(perm, comp)


def enumerate_symbols(n: int, w: int, max_cells: int | None = DEFAULT_MAX_CELLS) -> list[Symbol]:
    """All symbols with block sizes at most ``w``, sorted by canonical text."""
    check_budget(n, w, max_cells)
    return sorted(iter_symbols(n, w), key=lambda s: s.text)


def codim1_faces(s: Symbol) -> list[Symbol]:
    """Split one block into two, in every order-preserving way.

    For a block of size k the 2**k - 2 proper 2-colourings each give one face
    ``(colour-1 part | colour-2 part)``.
    """
    faces = []
    blocks = s.blocks
    for i, block in enumerate(blocks):
        k = len(block)
        if k < 2:
            continue
        head = s.labels[:sum(s.block_sizes[:i])]
        tail = s.labels[sum(s.block_sizes[:i + 1]):]
        sizes_head = s.block_sizes[:i]
        sizes_tail = s.block_sizes[i + 1:]
        for mask in range(1, (1 << k) - 1):
            left = tuple(block[t] for t in range(k) if mask >> t & 1)
            right = tuple(block[t] for t in range(k) if not mask >> t & 1)
            faces.append(Symbol(head + left + right + tail,
                                sizes_head + (len(left), len(right)) + sizes_tail))
    return faces


def codim1_cofaces(s: Symbol, w: int | None = None) -> list[Symbol]:
    """Merge two adjacent blocks by any shuffle; keep results of width <= w."""
    out = []
    blocks = s.blocks
    for i in range(len(blocks) - 1):
        a, b = blocks[i], blocks[i + 1]
        size = len(a) + len(b)
        if w is not None and size > w:
            continue
        head = s.labels[:sum(s.block_sizes[:i])]
        tail = s.labels[sum(s.block_sizes[:i + 2]):]
        sizes = s.block_sizes[:i] + (size,) + s.block_sizes[i + 2:]
        for positions in itertools.combinations(range(size), len(a)):
            merged = []
            ia = ib = 0
            pos = set(positions)
            for t in range(size):
                if t in pos:
                    merged.append(a[ia])
                    ia += 1
                else:
                    merged.append(b[ib])
                    ib += 1
            out.append(Symbol(head + tuple(merged) + tail, sizes))
    return out


def is_face(a: Symbol, b: Symbol) -> bool:
    """True iff ``a <= b`` in the face poset."""
    if a.n != b.n:
        return False
    a_blocks = a.blocks
    owner = {}
    for idx, block in enumerate(a_blocks):
        for x in block:
            owner[x] = idx
    pos = 0
    for b_block in b.blocks:
        target = set(b_block)
        run = set()
        start = pos
        while pos < len(a_blocks) and len(run) < len(target):
            run.update(a_blocks[pos])
            pos += 1
        if run != target or pos == start:
            return False
        # relative order of each a-block's elements inside this b-block
        for idx in range(start, pos):
            if tuple(x for x in b_block if owner[x] == idx) != a_blocks[idx]:
                return False
    return pos == len(a_blocks)
