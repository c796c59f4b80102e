"""Discrete gradient vector field on cell(n, w), skylines and their codes.

Blocks are numbered from 1.  A block is a *leader* when it is not a
follower, has a next block, and its first element beats every other element
of itself and of the next block; the block right after a leader is its
*follower*.  A cell is critical when every non-top-heavy block is a
follower and every leader/follower pair holds more than ``w`` elements.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import zip_longest

from .complex import CellComplex, face_keys
from .symbols import Symbol


class MatchingError(RuntimeError):
    """The matching function failed to be an involution."""


class NotCritical(ValueError):
    pass


class DecodeError(ValueError):
    """No critical cell reconstructs from the given skyline and code."""


@dataclass(frozen=True)
class BlockRoles:
    top_heavy: tuple[bool, ...]
    leader: tuple[bool, ...]
    follower: tuple[bool, ...]


def _roles(blocks) -> tuple[list[bool], list[bool], list[bool]]:
    m = len(blocks)
    top_heavy = [b[0] == max(b) for b in blocks]
    leader = [False] * m
    follower = [False] * m
    for k in range(m):
        if k > 0 and leader[k - 1]:
            follower[k] = True
            continue
        if k + 1 < m:
            first = blocks[k][0]
            if first == max(blocks[k]) and first > max(blocks[k + 1]):
                leader[k] = True
    return top_heavy, leader, follower


def block_roles(s: Symbol) -> BlockRoles:
    top_heavy, leader, follower = _roles(s.blocks)
    return BlockRoles(tuple(top_heavy), tuple(leader), tuple(follower))


def _first_failure(blocks, w: int):
    """``(kind, k)`` for the first block breaking k-crit, 0-based; None if critical.

    ``kind`` is ``"up"`` (leader at k-1 with a small follower at k) or
    ``"down"`` (block k neither top-heavy nor a follower).
    """
    top_heavy, leader, follower = _roles(blocks)
    for k in range(len(blocks)):
        if follower[k]:
            if len(blocks[k - 1]) + len(blocks[k]) <= w:
                return "up", k
        elif not top_heavy[k]:
            return "down", k
    return None


def is_critical(s: Symbol, w: int) -> bool:
    return _first_failure(s.blocks, w) is None


def _match_blocks(blocks, w: int):
    failure = _first_failure(blocks, w)
    if failure is None:
        return blocks
    kind, k = failure
    if kind == "up":
        # swap leader and follower, then drop the bar between them
        merged = blocks[k] + blocks[k - 1]
        return blocks[:k - 1] + (merged,) + blocks[k + 1:]
    block = blocks[k]
    top = block.index(max(block))
    return blocks[:k] + (block[top:], block[:top]) + blocks[k + 1:]


def match(s: Symbol, w: int) -> Symbol:
    """The partner of ``s`` under the matching (``s`` itself when critical)."""
    out = _match_blocks(s.blocks, w)
    if out is s.blocks:
        return s
    return Symbol.from_blocks(out)


def key(s: Symbol) -> tuple[int, ...]:
    _, _, follower = _roles(s.blocks)
    out = []
    for block, is_follower in zip(s.blocks, follower):
        out.append(0 if is_follower else block[0])
        out.append(len(block))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def key_less(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Lexicographic order on finitely supported integer sequences."""
    for x, y in zip_longest(a, b, fillvalue=0):
        if x != y:
            return x < y
    return False


@dataclass
class MorseMatching:
    n: int
    w: int
    pairs: list[tuple[Symbol, Symbol]]
    critical: list[list[Symbol]]
    partner: dict[Symbol, Symbol] = field(repr=False, default_factory=dict)

    def census(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.critical)


def build_matching(c: CellComplex) -> MorseMatching:
    """Orbit computation of the matching, with the involution checked."""
    pairs = []
    critical: list[list[Symbol]] = [[] for _ in c.cells]
    partner = {}
    for d, cells in enumerate(c.cells):
        for s in cells:
            t = match(s, c.w)
            if t == s:
                if not is_critical(s, c.w):
                    raise MatchingError(f"{s} is fixed but not critical")
                critical[d].append(s)
                continue
            if match(t, c.w) != s:
                raise MatchingError(f"match is not an involution at {s} -> {t}")
            if t.width > c.w:
                raise MatchingError(f"{s} matched outside cell({c.n},{c.w})")
            partner[s] = t
            if t.dimension == d + 1:
                pairs.append((s, t))
    return MorseMatching(c.n, c.w, pairs, critical, partner)


def critical_cells(c: CellComplex) -> list[list[Symbol]]:
    """Critical cells found by the direct predicate, per dimension."""
    return [[s for s in cells if is_critical(s, c.w)] for cells in c.cells]


def verify_pairs(c: CellComplex, m: MorseMatching) -> bool:
    """Every pair is a codimension-1 incidence of the complex."""
    for lo, hi in m.pairs:
        if hi.dimension != lo.dimension + 1:
            return False
        if (lo.labels, lo.block_sizes) not in set(face_keys(hi.labels, hi.block_sizes)):
            return False
    return True


def verify_gradient(c: CellComplex, m: MorseMatching | None = None) -> bool:
    """Every V-walk step strictly lowers the key, so no closed walks exist."""
    if m is None:
        m = build_matching(c)
    upward = {lo for lo, _ in m.pairs}
    for lo, hi in m.pairs:
        k_lo = key(lo)
        for face in face_keys(hi.labels, hi.block_sizes):
            if face == (lo.labels, lo.block_sizes):
                continue
            nxt = Symbol(*face)
            if nxt in upward and not key_less(key(nxt), k_lo):
                return False
    return True


# ---------------------------------------------------------------- skylines


@dataclass(frozen=True)
class Skyline:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def b(self) -> int:
        return sum(x for blk in self.blocks for x in blk)

    @property
    def z(self) -> int:
        return sum(1 for blk in self.blocks for x in blk if x == 0)

    @property
    def dimension(self) -> int:
        return sum(len(blk) for blk in self.blocks) - len(self.blocks)

    @property
    def text(self) -> str:
        return "|".join(" ".join(str(x) for x in blk) for blk in self.blocks)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SkylineCode:
    zeros_payload: tuple[int, ...]
    interval_assignment: tuple[int, ...]


def _critical_roles(s: Symbol, w: int):
    if not is_critical(s, w):
        raise NotCritical(f"{s} is not critical for w={w}")
    return _roles(s.blocks)


def skyline(s: Symbol, w: int) -> Skyline:
    _, leader, follower = _critical_roles(s, w)
    out = []
    for block, lead, follow in zip(s.blocks, leader, follower):
        if len(block) == 1 and not lead and not follow:
            continue
        out.append(tuple(1 if (lead and t == 0) else 0 for t in range(len(block))))
    return Skyline(tuple(out))


def _intervals(s: Symbol, follower) -> list[int]:
    """1-based interval index of each block; a barrier closes an interval."""
    out = []
    current = 1
    for is_follower in follower:
        out.append(current)
        if is_follower:
            current += 1
    return out


def code(s: Symbol, w: int) -> SkylineCode:
    _, leader, follower = _critical_roles(s, w)
    zeros = []
    for block, lead, follow in zip(s.blocks, leader, follower):
        if len(block) == 1 and not lead and not follow:
            continue
        zeros.extend(block[1:] if lead else block)
    assignment = [0] * s.n
    for block, interval in zip(s.blocks, _intervals(s, follower)):
        for x in block:
            assignment[x - 1] = interval
    return SkylineCode(tuple(zeros), tuple(assignment))


def decode(sky: Skyline, c: SkylineCode, n: int, w: int) -> Symbol:
    """Invert :func:`code` for cells with skyline ``sky``."""
    b = sky.b
    if len(c.interval_assignment) != n or len(c.zeros_payload) != sky.z:
        raise DecodeError("code length does not match skyline and n")
    if any(not 1 <= i <= b + 1 for i in c.interval_assignment):
        raise DecodeError("interval index out of range")
    members = defaultdict(list)
    for label, interval in enumerate(c.interval_assignment, start=1):
        members[interval].append(label)

    # group skyline blocks into intervals; a barrier is a 1-block and the next
    intervals: list[list[tuple[int, ...]]] = [[] for _ in range(b + 1)]
    current = 0
    after_leader = False
    for blk in sky.blocks:
        intervals[current].append(blk)
        if after_leader:
            current += 1
            after_leader = False
        elif blk[0] == 1:
            after_leader = True
    if after_leader:
        raise DecodeError("skyline ends with a leader")

    payload = iter(c.zeros_payload)
    used = set()
    blocks_out = []
    for t, sky_blocks in enumerate(intervals, start=1):
        filled = []
        for blk in sky_blocks:
            row = []
            for x in blk:
                if x == 1:
                    if not members[t]:
                        raise DecodeError(f"interval {t} is empty")
                    row.append(max(members[t]))
                else:
                    row.append(next(payload))
            filled.append(tuple(row))
        used.update(x for blk in filled for x in blk)
        has_barrier = t <= b
        follower_block = filled.pop() if has_barrier else None
        singles = [(x,) for x in members[t] if x not in used]
        used.update(x for (x,) in singles)
        free = sorted(filled + singles, key=lambda blk: blk[0])
        blocks_out.extend(free)
        if follower_block is not None:
            blocks_out.append(follower_block)
    try:
        out = Symbol.from_blocks(blocks_out)
    except ValueError as exc:
        raise DecodeError(str(exc)) from exc
    if out.n != n or out.width > w or not is_critical(out, w) or skyline(out, w) != sky or code(out, w) != c:
        raise DecodeError("code does not come from a critical cell with this skyline")
    return out


def critical_census(c: CellComplex):
    """Critical counts by dimension and by skyline.

    Returns ``(by_dim, by_skyline)`` where ``by_skyline`` maps a skyline to
    the number of critical cells carrying it.
    """
    by_dim = [0] * len(c.cells)
    by_skyline: Counter = Counter()
    for d, cells in enumerate(c.cells):
        for s in cells:
            if is_critical(s, c.w):
                by_dim[d] += 1
                by_skyline[skyline(s, c.w)] += 1
    return tuple(by_dim), dict(by_skyline)


def skyline_bound_violations(by_skyline: dict, w: int) -> list[Skyline]:
    """Skylines in liquid dimensions breaking ``b <= q`` or ``z <= qw + 2r``."""
    bad = []
    if w < 2:
        return bad
    for sky in by_skyline:
        j = sky.dimension
        if j < w - 1:
            continue
        q, r = divmod(j, w - 1)
        if sky.b > q or (sky.b == q and sky.z > q * w + 2 * r):
            bad.append(sky)
    return bad
