"""Closed-form Betti quantities and the solid/liquid/gas phase portrait."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .symbols import Symbol, iter_symbols


class RegimeLabel(str, enum.Enum):
    GAS = "gas"
    LIQUID = "liquid"
    SOLID = "solid"
    UNCLASSIFIED = "unclassified"

    @property
    def letter(self) -> str:
        return {"gas": "G", "liquid": "L", "solid": "S"}.get(self.value, "?")


@lru_cache(maxsize=None)
def _poincare(n: int) -> tuple[int, ...]:
    coeffs = [1]
    for k in range(1, n):
        nxt = coeffs + [0]
        for i, c in enumerate(coeffs):
            nxt[i + 1] += k * c
        coeffs = nxt
    return tuple(coeffs)


def stirling_betti(n: int, j: int) -> int:
    """Coefficient of t**j in (1 + t)(1 + 2t)...(1 + (n-1)t)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    coeffs = _poincare(n)
    return coeffs[j] if 0 <= j < len(coeffs) else 0


@dataclass(frozen=True)
class LiquidExponents:
    q: int
    r: int
    base: int
    degree: int


def liquid_exponents(w: int, j: int) -> LiquidExponents:
    """Write j = q(w-1) + r with 0 <= r < w-1; growth (q+1)**n * n**(qw+2r)."""
    if w < 2:
        raise ValueError("w must be at least 2")
    if j < w - 1:
        raise ValueError(f"j={j} is below w-1={w - 1}; no liquid decomposition")
    q, r = divmod(j, w - 1)
    return LiquidExponents(q, r, q + 1, q * w + 2 * r)


def _shape(n: int, w: int, j: int) -> tuple[int, int]:
    if w < 2 or j < 0:
        raise ValueError("special symbols need w >= 2 and j >= 0")
    q, r = divmod(j, w - 1)
    return q, r


def special_symbol_count(n: int, w: int, j: int) -> int:
    """Number of special symbols for (n, w, j), in closed form.

    Choose the q wide blocks and their left-to-right order, order each wide
    block behind its maximum, then drop the r pairs and the singletons into
    the q + 1 gaps, where their order is forced.
    """
    q, r = _shape(n, w, j)
    if q < 1:
        raise ValueError(f"j={j} < w-1: no wide block, not a liquid lower bound")
    ones = n - q * w - 2 * r
    if ones < 0:
        raise ValueError(f"n={n} is smaller than qw+2r={q * w + 2 * r}")
    multinomial = math.factorial(n) // (
        math.factorial(w) ** q * math.factorial(2) ** r * math.factorial(ones)
    )
    # the multinomial labels the q wide and r narrow groups; only the wide
    # blocks carry a free order, so the group labels are divided back out
    return (
        multinomial // (math.factorial(q) * math.factorial(r))
        * math.factorial(q)
        * math.factorial(w - 1) ** q
        * (q + 1) ** (n - q * w - r)
    )


def displayed_special_count(n: int, w: int, j: int) -> int:
    """The lower-bound product exactly as usually displayed (multinomial * q! * ...).

    Agrees with :func:`special_symbol_count` when q <= 1 and r <= 1 and
    exceeds it by q! * r! otherwise.
    """
    q, r = _shape(n, w, j)
    ones = n - q * w - 2 * r
    if q < 1 or ones < 0:
        raise ValueError("parameters outside the special-symbol range")
    multinomial = math.factorial(n) // (
        math.factorial(w) ** q * math.factorial(2) ** r * math.factorial(ones)
    )
    return multinomial * math.factorial(q) * math.factorial(w - 1) ** q * (q + 1) ** (n - q * w - r)


def is_special(s: Symbol, w: int) -> bool:
    """Special for (n, w, j = dimension of s)."""
    if w < 2:
        return False
    sizes = s.block_sizes
    if any(k not in (1, 2, w) for k in sizes):
        return False
    q, r = divmod(s.dimension, w - 1)
    wide = sum(1 for k in sizes if k == w)
    pairs = sum(1 for k in sizes if k == 2) if w > 2 else 0
    if wide != q or pairs != r:
        return False
    blocks = s.blocks
    if any(b[0] != max(b) for b in blocks):
        return False
    for a, b in zip(blocks, blocks[1:]):
        if len(a) < w and len(b) < w and a[0] < b[0]:
            return False
    return True


def enumerate_special_symbols(n: int, w: int, j: int) -> list[Symbol]:
    """Brute-force filter over all symbols of P(n, w), sorted by text."""
    if w < 2 or j < 0:
        return []
    out = [s for s in iter_symbols(n, w) if s.dimension == j and is_special(s, w)]
    return sorted(out, key=lambda s: s.text)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def regime(n: int, w: int, j: int) -> RegimeLabel:
    """Phase of H_j for n disks in a strip of width w.

    Solid is tested first (no j-cells at all), then gas, where w >= n also
    counts as gas because the strip is then wide enough for every cell.
    """
    if n < 1 or w < 0 or j < 0:
        raise ValueError("need n >= 1, w >= 0, j >= 0")
    if w == 0 or j >= n - _ceil_div(n, w) + 1:
        return RegimeLabel.SOLID
    if (w >= 2 and j <= w - 2) or w >= n:
        return RegimeLabel.GAS
    if 1 <= w <= n - 1 and w - 1 <= j <= n - _ceil_div(n, w):
        return RegimeLabel.LIQUID
    return RegimeLabel.UNCLASSIFIED


def lower_bound(n: int, w: int, j: int) -> int | None:
    """Special-symbol count where it is defined, else None."""
    try:
        return special_symbol_count(n, w, j)
    except ValueError:
        return None


def growth_ratio(betti: int, n: int, w: int, j: int) -> float:
    """betti / ((q+1)**n * n**(qw+2r)), the monitored asymptotic ratio."""
    e = liquid_exponents(w, j)
    return betti / (e.base ** n * n ** e.degree)


def portrait(n: int, w_max: int | None = None, j_max: int | None = None) -> list[list[RegimeLabel]]:
    """Grid ``grid[j][w]`` of regime labels for w = 0..w_max, j = 0..j_max."""
    w_max = n + 1 if w_max is None else w_max
    j_max = n if j_max is None else j_max
    return [[regime(n, w, j) for w in range(w_max + 1)] for j in range(j_max + 1)]


def format_portrait(n: int, w_max: int | None = None, j_max: int | None = None) -> str:
    grid = portrait(n, w_max, j_max)
    width = max(2, len(str(len(grid[0]) - 1)) + 1)
    lines = [f"n={n}"]
    for j in range(len(grid) - 1, -1, -1):
        row = "".join(label.letter.rjust(width) for label in grid[j])
        lines.append(f"j={j:<3}" + row)
    lines.append("     " + "".join(str(w).rjust(width) for w in range(len(grid[0]))) + "  (w)")
    return "\n".join(lines) + "\n"
