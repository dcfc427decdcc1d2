import pytest

from treedeck.decks import deck, subtree_count
from treedeck.errors import InfeasibleError
from treedeck.extremal import (
    g,
    max_deck_bruteforce,
    min_subtrees_bruteforce,
    s_y_closed_form,
    singleton_deck_shapes,
    singleton_jdeck_check,
    verify_xy_recurrences,
)
from treedeck.shapes import caterpillar, complete, jellyfish, root_split, x_tree, y_tree, z_tree


@pytest.mark.parametrize("n,expected", [
    (1, 0), (2, 1), (3, 1), (4, 1), (5, 2), (6, 3), (7, 3), (8, 4),
    (9, 5), (10, 5), (11, 6), (12, 7),
])
def test_g_fixture(n, expected):
    assert g(n) == expected


def test_g_cases():
    for n in range(3, 200):
        if n % 3 == 2:
            assert g(n) == 2 * (n // 3)
        else:
            assert g(n) == 2 * (n // 3) - 1


def test_max_deck_small():
    rep = max_deck_bruteforce(6)
    assert rep.value == 3
    assert z_tree(6) in rep.achievers
    assert max_deck_bruteforce(5).value == 2


@pytest.mark.parametrize("n", range(1, 14))
def test_max_deck_matches_formula(n):
    rep = max_deck_bruteforce(n)  # raises VerificationError on any mismatch
    assert rep.value == g(n)
    assert len(deck(z_tree(n), n - 1)) == g(n) if n >= 2 else True


@pytest.mark.parametrize("n", [3, 6, 9, 12])
def test_max_deck_achievers_hang_off_the_root(n):
    rep = max_deck_bruteforce(n)
    assert all(root_split(t) == frozenset({1, n - 1}) for t in rep.achievers)


def test_min_subtrees():
    assert min_subtrees_bruteforce(4).achievers == (caterpillar(4), complete(2))
    assert min_subtrees_bruteforce(7).achievers == (caterpillar(7),)
    assert min_subtrees_bruteforce(1).value == 1
    for n in range(1, 12):
        assert min_subtrees_bruteforce(n).value == n


def test_singleton_deck_shapes():
    assert singleton_deck_shapes(8) == frozenset({caterpillar(8), jellyfish(1, 4), complete(3)})
    assert singleton_deck_shapes(7) == frozenset({caterpillar(7)})
    assert singleton_deck_shapes(4) == frozenset({caterpillar(4), complete(2)})
    assert singleton_deck_shapes(12) == frozenset(
        {caterpillar(12), jellyfish(1, 6), jellyfish(2, 3)})


def test_singleton_jdeck():
    for n in range(5, 12):
        assert singleton_jdeck_check(n)
    # sanity in both directions
    for j in range(1, 10):
        assert len(deck(caterpillar(10), j)) == 1
    assert len(deck(jellyfish(1, 4), 6)) >= 2


def test_feasibility_refusals():
    with pytest.raises(InfeasibleError):
        max_deck_bruteforce(30, limit=1000)
    with pytest.raises(InfeasibleError):
        singleton_deck_shapes(30, limit=1000)


def test_s_y_closed_form():
    assert s_y_closed_form(6) == 9
    assert s_y_closed_form(10) == 41
    assert s_y_closed_form(14) == 201
    assert subtree_count(y_tree(14)) == 201
    with pytest.raises(ValueError):
        s_y_closed_form(8)
    with pytest.raises(ValueError):
        s_y_closed_form(2)


def test_xy_recurrences():
    assert verify_xy_recurrences(5)
    assert verify_xy_recurrences(9)
    with pytest.raises(ValueError):
        verify_xy_recurrences(6)
    with pytest.raises(ValueError):
        verify_xy_recurrences(1)


def test_x_counts_follow_from_y():
    # the half-sum relation between consecutive members of the family
    assert subtree_count(x_tree(9)) == (subtree_count(y_tree(10)) + subtree_count(y_tree(6))) // 2
    assert subtree_count(x_tree(13)) == (201 + 41) // 2
