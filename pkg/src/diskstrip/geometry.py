"""Point-configuration oracles for the cell model and the torus cycles.

Two coordinate conventions are used:

* the normalised strip ``0 < y < 1`` for the open sets ``U_alpha`` and the
  classification of points into chains;
* the width-``w`` strip centred on the x-axis (``|y| <= w/2``) for the torus
  cycles and their dual submanifolds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bounds import is_special
from .symbols import Symbol, is_face

X_TOL = 1e-9


@dataclass(frozen=True)
class ConfigurationPoint:
    coords: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple((float(x), float(y)) for x, y in self.coords))

    @classmethod
    def from_array(cls, array) -> "ConfigurationPoint":
        a = np.asarray(array, dtype=float).reshape(-1, 2)
        return cls(tuple(map(tuple, a)))

    @property
    def n(self) -> int:
        return len(self.coords)

    def x(self, label: int) -> float:
        return self.coords[label - 1][0]

    def y(self, label: int) -> float:
        return self.coords[label - 1][1]

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def min_distance(self) -> float:
        a = self.as_array()
        if len(a) < 2:
            return math.inf
        diff = a[:, None, :] - a[None, :, :]
        dist = np.sqrt((diff ** 2).sum(-1))
        return float(dist[np.triu_indices(len(a), 1)].min())


def to_unit_strip(p: ConfigurationPoint, w: float) -> ConfigurationPoint:
    """Width-w centred strip -> normalised strip (0, 1)."""
    return ConfigurationPoint(tuple((x / w, y / w + 0.5) for x, y in p.coords))


def from_unit_strip(p: ConfigurationPoint, w: float) -> ConfigurationPoint:
    return ConfigurationPoint(tuple((x * w, (y - 0.5) * w) for x, y in p.coords))


# ------------------------------------------------------------ U_alpha


def u_alpha_contains(p: ConfigurationPoint, a: Symbol) -> bool:
    """Membership of ``p`` (normalised strip) in the open set ``U_alpha``."""
    if p.n != a.n:
        raise ValueError("point and symbol have different n")
    if any(not 0 < y < 1 for _, y in p.coords):
        return False
    blocks = a.blocks
    spread = 0.0
    for block in blocks:
        for k, l in zip(block, block[1:]):
            if not p.y(k) > p.y(l):
                return False
        xs = [p.x(t) for t in block]
        spread = max(spread, max(xs) - min(xs))
    order = a.labels
    owner = {t: i for i, block in enumerate(blocks) for t in block}
    nearest = math.inf
    for i, k in enumerate(order):
        for l in order[i + 1:]:
            if owner[k] == owner[l]:
                continue
            if not p.x(k) < p.x(l):
                return False
            nearest = min(nearest, p.x(l) - p.x(k))
    return spread < nearest


def u_membership(p: ConfigurationPoint, symbols: Iterable[Symbol]) -> list[Symbol]:
    """Brute force: every symbol whose open set contains ``p``."""
    return [s for s in symbols if u_alpha_contains(p, s)]


def in_u_nw(p: ConfigurationPoint, w: int) -> bool:
    """Distinct points, 0 < y < 1, and no w + 1 points on a vertical line."""
    if any(not 0 < y < 1 for _, y in p.coords):
        return False
    if len(set(p.coords)) != p.n:
        return False
    counts: dict[float, int] = {}
    for x, _ in p.coords:
        counts[x] = counts.get(x, 0) + 1
    return max(counts.values()) <= w


def _x_sweep(p: ConfigurationPoint) -> list[list[list[int]]]:
    """Single-linkage clusters of the x-coordinates as the radius grows.

    Each entry is an ordered partition (parts left to right); consecutive
    entries differ at the critical radii, i.e. at the gaps between
    consecutive distinct x values.  Equal gaps merge simultaneously.
    """
    xs = sorted({x for x, _ in p.coords})
    groups = [[t for t in range(1, p.n + 1) if p.x(t) == x] for x in xs]
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    partitions = [[list(g) for g in groups]]
    for rho in sorted(set(gaps)):
        parts = [list(groups[0])]
        for gap, group in zip(gaps, groups[1:]):
            if gap <= rho:
                parts[-1].extend(group)
            else:
                parts.append(list(group))
        partitions.append(parts)
    return partitions


def classify_point(p: ConfigurationPoint, n: int, w: int) -> list[Symbol]:
    """The chain of symbols whose open sets contain ``p``, smallest first.

    The x-sweep gives a chain of ordered partitions.  A partition can only
    lift when each part is narrower (in x) than every gap between parts;
    the lift orders each part by decreasing y.  Once a part is too wide for
    ``w`` or holds a y-tie, that partition and every coarser one is dropped.
    """
    if p.n != n:
        raise ValueError(f"point has {p.n} disks, expected {n}")
    if not in_u_nw(p, w):
        raise ValueError("point is not in U(n, w)")
    chain = []
    for parts in _x_sweep(p):
        if any(len(part) > w for part in parts):
            break
        ordered = [sorted(part, key=lambda t: -p.y(t)) for part in parts]
        if any(p.y(a) == p.y(b) for part in ordered for a, b in zip(part, part[1:])):
            break
        spread = max(max(p.x(t) for t in part) - min(p.x(t) for t in part) for part in parts)
        gap = min(
            (min(p.x(t) for t in b) - max(p.x(t) for t in a) for a, b in zip(parts, parts[1:])),
            default=math.inf,
        )
        if spread < gap:
            chain.append(Symbol.from_blocks(ordered))
    return chain


def is_chain(symbols: Sequence[Symbol]) -> bool:
    return all(a != b and is_face(a, b) for a, b in zip(symbols, symbols[1:]))


# ------------------------------------------------------------ chain witness


def _merge_into(current: list[tuple[int, ...]], target: Symbol, w: int | None):
    """Merge the left-most adjacent pair lying in one target block (or any
    pair fitting in width ``w`` when ``target`` is None); None if stuck."""
    if target is not None:
        owner = {t: i for i, block in enumerate(target.blocks) for t in block}
        order = {t: i for i, t in enumerate(target.labels)}
    for i in range(len(current) - 1):
        a, b = current[i], current[i + 1]
        if target is not None:
            if owner[a[0]] != owner[b[0]]:
                continue
            merged = tuple(sorted(a + b, key=order.__getitem__))
        else:
            if len(a) + len(b) > w:
                continue
            merged = a + b
        return current[:i] + [merged] + current[i + 2:], i
    return None


def maximal_chain(chain: Sequence[Symbol], w: int) -> list[Symbol]:
    """Extend a chain to a maximal one: down to a vertex, up to a top cell,
    filling every step with a single merge of two adjacent blocks."""
    if not chain:
        raise ValueError("empty chain")
    if not is_chain(chain):
        raise ValueError("symbols do not form a chain")
    first = chain[0]
    current = [(t,) for t in first.labels]
    out = [Symbol.from_blocks(current)]
    for target in chain:
        while list(map(tuple, target.blocks)) != current:
            step = _merge_into(current, target, None)
            if step is None:
                raise ValueError(f"cannot reach {target} by merges")
            current = step[0]
            out.append(Symbol.from_blocks(current))
    while True:
        step = _merge_into(current, None, w)
        if step is None:
            break
        current = step[0]
        out.append(Symbol.from_blocks(current))
    return out


def chain_witness(ch: Sequence[Symbol], n: int, w: int) -> ConfigurationPoint:
    """A point lying in ``U_alpha`` for every ``alpha`` of the chain.

    x-coordinates follow the vertex at the bottom of a maximal extension;
    the merge made at step i pins the distance between the outer ends of
    the merged block to 3**i.  y-coordinates come from the top cell, evenly
    spaced and decreasing inside each block.
    """
    full = maximal_chain(ch, w)
    if full[0].n != n:
        raise ValueError("chain is over a different n")
    vertex_order = full[0].labels
    # each block: offsets of its members from its left end, in vertex order
    spans: list[dict[int, float]] = [{t: 0.0} for t in vertex_order]
    for step, (lo, hi) in enumerate(zip(full, full[1:]), start=2):
        lo_blocks = lo.blocks
        for i in range(len(lo_blocks) - 1):
            if hi.block_sizes == lo.block_sizes[:i] + (lo.block_sizes[i] + lo.block_sizes[i + 1],) + lo.block_sizes[i + 2:] \
                    and set(hi.blocks[i]) == set(lo_blocks[i]) | set(lo_blocks[i + 1]):
                break
        left, right = spans[i], spans[i + 1]
        right_width = max(right.values())
        shift = 3.0 ** step - right_width
        merged = dict(left)
        merged.update({t: off + shift for t, off in right.items()})
        spans[i:i + 2] = [merged]
    separation = 3.0 ** (len(full) + 1)
    x = {}
    cursor = 0.0
    for block in spans:
        for t, off in block.items():
            x[t] = cursor + off
        cursor += max(block.values()) + separation
    y = {}
    for block in full[-1].blocks:
        k = len(block)
        for i, t in enumerate(block):
            y[t] = 1.0 - (i + 0.5) / k
    return ConfigurationPoint(tuple((x[t], y[t]) for t in range(1, n + 1)))


# ------------------------------------------------------------ tau


def tau(p: ConfigurationPoint, lower: float = 0.0, upper: float = 1.0) -> float:
    """Largest disk diameter for which ``p`` is a valid disk configuration."""
    walls = min(2 * min(y - lower, upper - y) for _, y in p.coords)
    return min(walls, p.min_distance())


# ------------------------------------------------------------ torus cycles


def torus_point(a: Symbol, angles: Sequence[float], w: int) -> ConfigurationPoint:
    """Point of the torus cycle of special symbol ``a`` at the given angles.

    Coordinates live in the width-``w`` strip centred on the x-axis.
    """
    if not is_special(a, w):
        raise ValueError(f"{a} is not special for w={w}")
    j = a.dimension
    if len(angles) != j:
        raise ValueError(f"expected {j} angles, got {len(angles)}")
    theta = [None] + [float(t) for t in angles]  # 1-based
    coords: dict[int, tuple[float, float]] = {}
    offset = 0
    used = 0
    for block in a.blocks:
        size = len(block)
        centre = offset + size / 2
        offset += size
        used += size - 1
        last = used  # index of the last angle belonging to this block
        if size == 1:
            coords[block[0]] = (centre, 0.0)
        elif size == 2:
            c, s = math.cos(theta[last]), math.sin(theta[last])
            coords[block[0]] = (centre - c / 2, -s / 2)
            coords[block[1]] = (centre + c / 2, s / 2)
        else:
            u, v = centre, 0.0
            for k in range(1, size):
                c, s = math.cos(theta[last + 1 - k]), math.sin(theta[last + 1 - k])
                coords[block[size - k]] = (u + (size - k) / 2 * c, v + (size - k) / 2 * s)
                u, v = u - c / 2, v - s / 2
            coords[block[0]] = (u, v)
    return ConfigurationPoint(tuple(coords[t] for t in range(1, a.n + 1)))


def zstar_contains(p: ConfigurationPoint, a: Symbol, w: int | None = None) -> bool:
    """Membership in the dual submanifold of special symbol ``a``.

    Same block: equal x (within 1e-9) and y decreasing along the block.
    Different blocks with at least one of width ``w``: x increasing.
    """
    if w is None:
        w = a.width
    blocks = a.blocks
    owner = {t: i for i, block in enumerate(blocks) for t in block}
    for block in blocks:
        for k, l in zip(block, block[1:]):
            if abs(p.x(k) - p.x(l)) > X_TOL or not p.y(k) > p.y(l):
                return False
    order = a.labels
    for i, k in enumerate(order):
        for l in order[i + 1:]:
            bk, bl = owner[k], owner[l]
            if bk == bl:
                continue
            if (len(blocks[bk]) == w or len(blocks[bl]) == w) and not p.x(k) < p.x(l):
                return False
    return True


def aligned_angle_tuples(j: int):
    """All tuples in {pi/2, 3pi/2}**j."""
    return itertools.product((math.pi / 2, 3 * math.pi / 2), repeat=j)


def random_u_point(n: int, w: int, rng: np.random.Generator, spread: float = 4.0) -> ConfigurationPoint:
    """Random point of U(n, w); x values sometimes collide to exercise ties."""
    while True:
        xs = rng.uniform(0.0, spread, size=n)
        if n >= 2 and rng.random() < 0.3:
            # force a vertical stack of up to w points
            size = int(rng.integers(2, min(w, n) + 1)) if w >= 2 else 1
            idx = rng.choice(n, size=size, replace=False)
            xs[idx] = xs[idx[0]]
        ys = rng.uniform(0.0, 1.0, size=n)
        p = ConfigurationPoint(tuple(zip(xs.tolist(), ys.tolist())))
        if in_u_nw(p, w):
            return p
