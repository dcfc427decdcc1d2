import pytest
from hypothesis import given, strategies as st

from treedeck.enumeration import shape_level
from treedeck.errors import ParseError
from treedeck.shapes import (
    caterpillar,
    complete,
    code_sort_key,
    decode,
    encode,
    jellyfish,
    join,
    leaf,
    parse_text,
    root_split,
    to_text,
    x_tree,
    y_tree,
    z_tree,
)

from conftest import shapes


def test_leaf_basics():
    t = leaf()
    assert t.size == 1
    assert t.is_leaf
    assert encode(t) == "0"
    assert leaf() is t


def test_code_fixtures():
    assert encode(caterpillar(2)) == "100"
    assert encode(caterpillar(3)) == "10100"
    assert encode(complete(2)) == "1100100"
    assert encode(complete(2)) == "1" + encode(caterpillar(2)) + encode(caterpillar(2))


def test_join_is_commutative_and_interned():
    a, b = caterpillar(3), complete(2)
    assert join(a, b) is join(b, a)
    t = join(a, b)
    assert t.size == 7
    assert code_sort_key(t.left.code) <= code_sort_key(t.right.code)


def test_base_case_identities():
    assert caterpillar(1) is leaf()
    assert complete(0) is leaf()
    assert join(leaf(), leaf()) is caterpillar(2)
    assert complete(1) is caterpillar(2)


@given(shapes(max_size=12), shapes(max_size=12))
def test_join_commutative_property(a, b):
    assert join(a, b) is join(b, a)


@given(shapes(max_size=12))
def test_child_order_invariant(t):
    stack = [t]
    while stack:
        s = stack.pop()
        if s.is_leaf:
            continue
        assert code_sort_key(s.left.code) <= code_sort_key(s.right.code)
        assert s.size == s.left.size + s.right.size
        stack.extend((s.left, s.right))


@pytest.mark.parametrize("n", range(1, 12))
def test_caterpillar(n):
    t = caterpillar(n)
    assert t.size == n
    if n >= 2:
        assert root_split(t) == frozenset({1, n - 1})
        assert t is join(leaf(), caterpillar(n - 1))


def test_constructor_domain_errors():
    with pytest.raises(ValueError):
        caterpillar(0)
    with pytest.raises(ValueError):
        complete(-1)
    with pytest.raises(ValueError):
        jellyfish(1, 1)
    with pytest.raises(ValueError):
        jellyfish(-1, 3)
    with pytest.raises(ValueError):
        x_tree(4)
    with pytest.raises(ValueError):
        y_tree(3)
    with pytest.raises(ValueError):
        z_tree(0)


@pytest.mark.parametrize("h", range(0, 7))
def test_complete_size(h):
    assert complete(h).size == 2 ** h


def test_jellyfish_identities():
    assert jellyfish(0, 5) is caterpillar(5)
    assert jellyfish(2, 2) is complete(3)
    assert jellyfish(1, 4) is join(caterpillar(4), caterpillar(4))
    # identities across the whole supported size range
    for k in range(0, 6):
        assert jellyfish(k, 2) is complete(k + 1)
    for l in range(2, 65):
        assert jellyfish(0, l) is caterpillar(l)
    for k in range(0, 6):
        for l in range(2, 65):
            if 2 ** k * l > 64:
                break
            assert jellyfish(k, l).size == 2 ** k * l


def test_z_tree_recursion():
    assert z_tree(1) is leaf()
    assert z_tree(3) is caterpillar(3)
    assert z_tree(4) is join(caterpillar(2), z_tree(2))
    assert z_tree(5) is join(caterpillar(2), z_tree(3))
    assert z_tree(6) is join(leaf(), z_tree(5))
    for n in range(4, 65):
        expected = join(leaf(), z_tree(n - 1)) if n % 3 == 0 else join(caterpillar(2), z_tree(n - 2))
        assert z_tree(n) is expected


def test_xy_trees():
    assert x_tree(1) is leaf()
    assert y_tree(2) is caterpillar(2)
    assert x_tree(5) is join(caterpillar(3), caterpillar(2))
    for n in range(5, 65, 4):
        assert x_tree(n) is join(caterpillar(3), y_tree(n - 3))
        assert x_tree(n).size == n
    for n in range(2, 65, 4):
        assert y_tree(n).size == n


def test_root_split():
    assert root_split(complete(2)) == frozenset({2})
    assert root_split(caterpillar(5)) == frozenset({1, 4})
    t = join(join(caterpillar(3), leaf()), caterpillar(5))
    assert t.size == 9
    assert root_split(t) == frozenset({4, 5})
    with pytest.raises(ValueError):
        root_split(leaf())


def test_decode_roundtrip_exhaustive():
    for n in range(1, 11):
        for t in shape_level(n):
            assert decode(encode(t)) is t


def test_decode_roundtrip_random(rng):
    from conftest import build_random_shape

    for _ in range(1000):
        t = build_random_shape(rng, rng.randint(1, 20))
        assert decode(encode(t)) is t


@pytest.mark.parametrize("code,offset", [
    ("", 0),          # empty
    ("1", 1),         # truncated
    ("10", 2),        # truncated
    ("2", 0),         # bad character
    ("00", 1),        # trailing data
    ("1000", 3),      # trailing data
    ("11000", 4),     # children out of canonical order (C2 before C1)
])
def test_decode_rejects_malformed(code, offset):
    with pytest.raises(ParseError) as exc:
        decode(code)
    assert exc.value.offset == offset


def test_code_total_order_matches_sort_key():
    pool = [t for n in range(1, 8) for t in shape_level(n)]
    by_dunder = sorted(pool)
    by_key = sorted(pool, key=lambda t: code_sort_key(t.code))
    assert by_dunder == by_key


def test_to_text_fixtures():
    assert to_text(caterpillar(3)) == "(*,(*,*))"
    assert to_text(leaf()) == "*"
    assert to_text(complete(2)) == "((*,*),(*,*))"


def test_parse_text_canonicalizes():
    assert parse_text("((*,*),*)") is caterpillar(3)
    assert parse_text(" ( * ,\t( * , * ) )\n") is caterpillar(3)


def test_text_roundtrip_exhaustive():
    for n in range(1, 13):
        for t in shape_level(n):
            assert parse_text(to_text(t)) is t


@pytest.mark.parametrize("text,offset,expected", [
    ("", 0, "'*' or '('"),
    ("(", 1, "'*' or '('"),
    ("(*", 2, "','"),
    ("(*,", 3, "'*' or '('"),
    ("(*,*", 4, "')'"),
    ("(*)", 2, "','"),
    ("*,*", 1, "end of input"),
    ("x", 0, "'*' or '('"),
    ("(*,*))", 5, "end of input"),
])
def test_parse_text_errors(text, offset, expected):
    with pytest.raises(ParseError) as exc:
        parse_text(text)
    assert exc.value.offset == offset
    assert exc.value.expected == expected


def _isomorphic(a, b, memo) -> bool:
    """Structural isomorphism oracle, independent of canonical codes."""
    if a.size != b.size:
        return False
    if a.is_leaf or b.is_leaf:
        return a.is_leaf and b.is_leaf
    key = (a, b)
    got = memo.get(key)
    if got is None:
        got = ((_isomorphic(a.left, b.left, memo) and _isomorphic(a.right, b.right, memo))
               or (_isomorphic(a.left, b.right, memo) and _isomorphic(a.right, b.left, memo)))
        memo[key] = got
    return got


def test_encode_injective_against_iso_oracle():
    # pairwise over every shape of each size: equal codes <=> isomorphic
    memo = {}
    for n in range(1, 13):
        level = shape_level(n)
        for i, a in enumerate(level):
            assert _isomorphic(a, a, memo)
            for b in level[i + 1:]:
                assert a.code != b.code
                assert not _isomorphic(a, b, memo), (to_text(a), to_text(b))


@given(shapes(max_size=10), shapes(max_size=10))
def test_iso_oracle_agrees_with_identity(a, b):
    assert (a is b) == _isomorphic(a, b, {})
