import math

import pytest

from diskstrip.complex import (
    build_complex,
    check_links_flag,
    clique_filling,
    euler_characteristic,
    top_dimension,
)
from diskstrip.symbols import BudgetExceeded, Symbol, is_face, parse_symbol as P


def test_f_vectors():
    assert build_complex(3, 2).f_vector == (6, 12)
    assert build_complex(3, 3).f_vector == (6, 12, 6)
    assert build_complex(1, 1).f_vector == (1,)


@pytest.mark.parametrize("n, w, chi", [(3, 2, -6), (3, 3, 0), (1, 1, 1)])
def test_euler(n, w, chi):
    assert euler_characteristic(build_complex(n, w)) == chi


@pytest.mark.parametrize("n", range(1, 7))
def test_total_cells(n):
    assert build_complex(n, n).num_cells == math.factorial(n) * 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_top_dimension(n):
    for w in range(1, n + 1):
        c = build_complex(n, w)
        assert c.top_dimension == n - math.ceil(n / w) == top_dimension(n, w)
        assert len(c.cells[-1]) > 0


@pytest.mark.parametrize("n, w", [(4, 2), (4, 3), (5, 3)])
def test_boundaries_are_faces(n, w):
    c = build_complex(n, w)
    for d in range(1, c.top_dimension + 1):
        for col, cell in enumerate(c.cells[d]):
            rows = c.boundary(d, col).tolist()
            assert rows == sorted(set(rows))
            assert len(rows) == sum(2 ** k - 2 for k in cell.block_sizes)
            assert all(is_face(c.cells[d - 1][r], cell) for r in rows)


def test_cells_ordered_by_text():
    c = build_complex(4, 3)
    for cells in c.cells:
        assert [s.text for s in cells] == sorted(s.text for s in cells)
        for i, s in enumerate(cells):
            assert c.index_of(s) == i


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_complex(6, 6, max_cells=1000)


def test_incidence_removal_fixture():
    c = build_complex(3, 3)
    row = int(c.boundary(2, 0)[0])
    mutated = c.without_incidence(2, 0, row)
    assert len(mutated.boundary(2, 0)) == len(c.boundary(2, 0)) - 1
    assert len(c.boundary(2, 0)) == 6


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_flag_links(n):
    assert check_links_flag(n)


def test_clique_filled_by_cube():
    v = P("4|6|5|1|3|2")
    clique = [P("4 6|5|1|3|2"), P("4|6|1 5|3|2"), P("4|6|5|1|2 3")]
    filling = clique_filling(v, clique)
    assert filling == P("4 6|1 5|2 3")
    assert filling.dimension == 3
    assert all(is_face(e, filling) for e in clique)
