import math

import pytest
from hypothesis import given, strategies as st

from diskstrip.symbols import (
    BudgetExceeded,
    Symbol,
    SymbolError,
    codim1_cofaces,
    codim1_faces,
    enumerate_symbols,
    format_symbol,
    is_face,
    iter_symbols,
    parse_symbol,
    predicted_cell_count,
)


def P(text):
    return parse_symbol(text)


def test_parse_examples():
    assert parse_symbol("3 1|2", 3) == Symbol((3, 1, 2), (2, 1))
    assert parse_symbol("1", 1) == Symbol((1,), (1,))


@pytest.mark.parametrize("text, n", [
    ("1|1", 2), ("1 2", 3), ("0|1", 2), ("1||2", 2), ("1  2", 2), ("", 1), ("1,2", 2), ("3|1", 2),
])
def test_parse_rejects(text, n):
    with pytest.raises(SymbolError):
        parse_symbol(text, n)


def test_parse_tolerates_spaces_around_bars():
    assert parse_symbol(" 3 1 | 2 ").text == "3 1|2"


def test_multi_digit_labels():
    s = parse_symbol("10 1|2 3 4 5 6 7 8 9|11", 11)
    assert s.block_sizes == (2, 8, 1)
    assert format_symbol(s) == "10 1|2 3 4 5 6 7 8 9|11"


@pytest.mark.parametrize("text, dim", [("3 1|2", 1), ("1|2|3", 0), ("3 2 1", 2)])
def test_dimension(text, dim):
    assert P(text).dimension == dim


def test_enumerate_examples():
    assert len(enumerate_symbols(3, 3)) == 24
    assert len(enumerate_symbols(3, 2)) == 18
    assert [s.text for s in enumerate_symbols(1, 1)] == ["1"]


def test_enumerate_sorted_and_unique():
    syms = enumerate_symbols(4, 3)
    texts = [s.text for s in syms]
    assert texts == sorted(texts)
    assert len(set(texts)) == len(texts)
    assert all(s.width <= 3 for s in syms)


def test_wide_w_behaves_as_n():
    assert enumerate_symbols(3, 10) == enumerate_symbols(3, 3)


@pytest.mark.parametrize("n", range(1, 8))
def test_counts(n):
    total = 0
    by_dim = {}
    for s in iter_symbols(n, n):
        total += 1
        by_dim[s.dimension] = by_dim.get(s.dimension, 0) + 1
    assert total == math.factorial(n) * 2 ** (n - 1)
    for j in range(n):
        assert by_dim.get(j, 0) == math.factorial(n) * math.comb(n - 1, j)


def test_budget_guard():
    assert predicted_cell_count(8, 8) == 5_160_960
    with pytest.raises(BudgetExceeded):
        enumerate_symbols(5, 5, max_cells=100)


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip(n):
    for s in iter_symbols(n, n):
        assert parse_symbol(format_symbol(s), n) == s


def test_codim1_faces_examples():
    assert {s.text for s in codim1_faces(P("1 2"))} == {"1|2", "2|1"}
    assert {s.text for s in codim1_faces(P("3 1 2"))} == {
        "3|1 2", "1|3 2", "2|3 1", "3 1|2", "3 2|1", "1 2|3"}
    assert codim1_faces(P("1|2|3")) == []


def brute_faces(s, symbols):
    return {t for t in symbols if t.dimension == s.dimension - 1 and is_face(t, s)}


@pytest.mark.parametrize("n", range(1, 6))
def test_face_consistency(n):
    symbols = enumerate_symbols(n, n)
    for s in symbols:
        faces = codim1_faces(s)
        assert len(faces) == len(set(faces))
        assert len(faces) == sum(2 ** k - 2 for k in s.block_sizes)
        assert all(is_face(f, s) and f.dimension == s.dimension - 1 for f in faces)
        assert set(faces) == brute_faces(s, symbols)


def test_is_face_examples():
    assert is_face(P("1|3|2"), P("3 1|2"))
    assert is_face(P("3 1|2"), P("3 2 1"))
    assert not is_face(P("1 3|2"), P("3 1 2"))


def cover_closure(symbols):
    """Reflexive-transitive closure of single merge moves."""
    up = {}
    for s in sorted(symbols, key=lambda s: -s.dimension):
        reach = {s}
        for t in codim1_cofaces(s):
            reach |= up[t]
        up[s] = reach
    return up


@pytest.mark.parametrize("n", range(1, 5))
def test_is_face_matches_cover_closure(n):
    symbols = enumerate_symbols(n, n)
    up = cover_closure(symbols)
    for a in symbols:
        for b in symbols:
            assert is_face(a, b) == (b in up[a]), (a, b)


def test_cofaces_inverse_to_faces():
    for s in enumerate_symbols(4, 4):
        for t in codim1_cofaces(s):
            assert s in codim1_faces(t)


@given(st.permutations(range(1, 8)), st.lists(st.booleans(), min_size=6, max_size=6))
def test_symbol_ordering_matches_text(perm, bars):
    sizes, run = [], 1
    for bar in bars:
        if bar:
            sizes.append(run)
            run = 1
        else:
            run += 1
    sizes.append(run)
    s = Symbol(tuple(perm), tuple(sizes))
    assert P(s.text) == s
    assert hash(P(s.text)) == hash(s)
    assert s.dimension == 7 - len(sizes)
