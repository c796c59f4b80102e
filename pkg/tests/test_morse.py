import pytest

from diskstrip.morse import (
    NotCritical,
    Skyline,
    SkylineCode,
    block_roles,
    build_matching,
    code,
    critical_census,
    decode,
    is_critical,
    key,
    key_less,
    match,
    skyline,
    verify_gradient,
    verify_pairs,
)
from diskstrip.symbols import parse_symbol as P
from tests.conftest import complex_of


def test_block_roles():
    r = block_roles(P("2|1|3"))
    assert r.leader == (True, False, False)
    assert r.follower == (False, True, False)
    r = block_roles(P("1|2|3"))
    assert not any(r.leader) and not any(r.follower)
    r = block_roles(P("3|1 2"))
    assert r.leader == (True, False) and r.follower == (False, True)


@pytest.mark.parametrize("text, crit", [("1|2|3", True), ("3|1 2", True), ("1|2 3", False)])
def test_is_critical(text, crit):
    assert is_critical(P(text), 2) is crit


@pytest.mark.parametrize("src, dst", [("2|1|3", "1 2|3"), ("1 2|3", "2|1|3"), ("1|2|3", "1|2|3")])
def test_match(src, dst):
    assert match(P(src), 2) == P(dst)


@pytest.mark.parametrize("text, k", [
    ("2|1|3", (2, 1, 0, 1, 3, 1)),
    ("1|2|3", (1, 1, 2, 1, 3, 1)),
    ("3 2 1", (3, 3)),
])
def test_key(text, k):
    assert key(P(text)) == k


def test_key_less_pads_with_zeros():
    assert key_less((1, 2), (1, 2, 1))
    assert not key_less((1, 2, 0), (1, 2))
    assert key_less((0, 9), (1,))


def test_census_examples():
    assert build_matching(complex_of(3, 2)).census() == (1, 7)
    assert build_matching(complex_of(3, 3)).census()[0] == 1
    m = build_matching(complex_of(2, 1))
    assert m.census() == (2,) and not m.pairs


@pytest.mark.parametrize("n, w", [(3, 2), (4, 2), (4, 3)])
def test_gradient_examples(n, w):
    c = complex_of(n, w)
    assert verify_gradient(c)


@pytest.mark.parametrize("n", range(1, 7))
def test_matching_is_involution(n):
    for w in range(1, n + 1):
        c = complex_of(n, w)
        m = build_matching(c)
        assert verify_pairs(c, m)
        for s, t in m.pairs:
            assert match(s, w) == t and match(t, w) == s
        for s in (x for cells in m.critical for x in cells):
            assert match(s, w) == s


@pytest.mark.parametrize("text, sky, b, z", [
    ("3|1 2", "1|0 0", 1, 2),
    ("2 1|3", "0 0", 0, 2),
    ("1|2|3", "", 0, 0),
])
def test_skyline(text, sky, b, z):
    s = skyline(P(text), 2)
    assert (s.text, s.b, s.z) == (sky, b, z)


@pytest.mark.parametrize("text, payload", [("3|1 2", (1, 2)), ("2 1|3", (2, 1)), ("1|2|3", ())])
def test_code_and_decode(text, payload):
    s = P(text)
    cd = code(s, 2)
    assert cd == SkylineCode(payload, (1, 1, 1))
    assert decode(skyline(s, 2), cd, 3, 2) == s


def test_decode_spec_form():
    assert decode(Skyline(((1,), (0, 0))), SkylineCode((1, 2), (1, 1, 1)), 3, 2) == P("3|1 2")
    assert decode(Skyline(()), SkylineCode((), (1, 1, 1)), 3, 2) == P("1|2|3")


def test_code_rejects_non_critical():
    with pytest.raises(NotCritical):
        code(P("1|2 3"), 2)


@pytest.mark.parametrize("n", range(2, 7))
def test_code_injective(n):
    for w in range(2, n + 1):
        c = complex_of(n, w)
        seen = {}
        for cells in c.cells:
            for s in cells:
                if not is_critical(s, w):
                    continue
                sky, cd = skyline(s, w), code(s, w)
                assert (sky, cd) not in seen
                seen[(sky, cd)] = s
                assert decode(sky, cd, n, w) == s


def test_census_by_skyline_sums():
    by_dim, by_sky = critical_census(complex_of(5, 3))
    assert sum(by_dim) == sum(by_sky.values())
