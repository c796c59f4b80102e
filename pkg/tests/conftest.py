from __future__ import annotations

import resource
import time
from dataclasses import dataclass
from functools import lru_cache

import pytest

from diskstrip import gf2, morse
from diskstrip.complex import build_complex, euler_characteristic


@lru_cache(maxsize=None)
def complex_of(n: int, w: int):
    """Cached complexes, small n only (n = 7 complexes are ~100 MB each)."""
    assert n <= 6
    return build_complex(n, w)


@dataclass(frozen=True)
class Stats:
    n: int
    w: int
    f_vector: tuple[int, ...]
    euler: int
    betti: tuple[int, ...]
    critical: tuple[int, ...]
    skyline_violations: tuple
    seconds: float  # build plus reduction


@lru_cache(maxsize=None)
def stats(n: int, w: int) -> Stats:
    """Betti numbers and critical census of cell(n, w), computed once per session.

    The complex is built afresh (and timed) and then dropped.
    """
    t0 = time.perf_counter()
    c = build_complex(n, w)
    betti = gf2.betti_numbers(c).betti
    elapsed = time.perf_counter() - t0
    by_dim, by_sky = morse.critical_census(c)
    return Stats(n, w, c.f_vector, euler_characteristic(c), betti, by_dim,
                 tuple(morse.skyline_bound_violations(by_sky, w)), elapsed)


def peak_rss_mb() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def record(criterion: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}".rstrip())
        print(ACCEPTANCE_LINES[-1])
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
