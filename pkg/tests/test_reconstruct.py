import pytest

from treedeck.decks import deck, multideck
from treedeck.errors import InfeasibleError, UnsupportedSizeError
from treedeck.reconstruct import (
    CounterexampleFamily,
    counterexample_family,
    decks_determine,
    reconstruction_number,
    verify_counterexample,
)
from treedeck.shapes import caterpillar, complete, join, leaf

C = caterpillar


def test_size5_deck_collision():
    rep = decks_determine(5, 4, "deck")
    assert not rep.determined
    assert rep.classes == 2
    assert rep.witness == (join(leaf(), complete(2)), join(C(2), C(3)))
    # the collision is exactly the pair sharing {balanced-4, caterpillar-4}
    assert deck(rep.witness[0], 4) == deck(rep.witness[1], 4)


def test_size5_multideck_determines():
    rep = decks_determine(5, 4, "multideck")
    assert rep.determined and rep.witness is None and rep.classes == 3


def test_size6_determined_at_5():
    assert decks_determine(6, 5, "deck").determined


def test_determination_monotone_in_j():
    for n in range(4, 10):
        flags = [decks_determine(n, j, "deck").determined for j in range(1, n + 1)]
        # once determined, determined for all larger j
        assert flags == sorted(flags)


def test_small_reconstruction_numbers():
    assert reconstruction_number(4, "deck").value == 4
    assert reconstruction_number(5, "deck").value == 5
    assert reconstruction_number(4, "multideck").value == 4
    assert reconstruction_number(5, "multideck").value == 4


# values computed by the exhaustive sweep itself (regression freeze);
# test_bounds asserts each sits inside the structural bounds
EXPECTED_R = {6: 5, 7: 6, 8: 7, 9: 8, 10: 8, 11: 10}
EXPECTED_RM = {6: 4, 7: 4, 8: 5, 9: 6, 10: 6, 11: 6}


@pytest.mark.parametrize("n", sorted(EXPECTED_R))
def test_computed_reconstruction_numbers(n):
    rd = reconstruction_number(n, "deck").value
    rm = reconstruction_number(n, "multideck").value
    assert rd == EXPECTED_R[n]
    assert rm == EXPECTED_RM[n]


@pytest.mark.parametrize("n", sorted(EXPECTED_R))
def test_bounds(n):
    rd = reconstruction_number(n, "deck").value
    rm = reconstruction_number(n, "multideck").value
    assert 2 * ((n + 3) // 4) < rd <= n - 1
    assert 4 <= rm <= rd


def test_determine_argument_checks():
    with pytest.raises(ValueError):
        decks_determine(5, 0)
    with pytest.raises(ValueError):
        decks_determine(5, 6)
    with pytest.raises(ValueError):
        decks_determine(5, 4, "both")
    with pytest.raises(ValueError):
        reconstruction_number(3)
    with pytest.raises(InfeasibleError):
        decks_determine(30, 29, limit=10)


# ---------------------------------------------------------------------------
# counterexample families
# ---------------------------------------------------------------------------

def test_family_construction_size8():
    fam = counterexample_family(8)
    assert fam.k == 2 and fam.deck_size == 4
    assert fam.t1 is join(join(C(3), C(1)), join(C(2), C(2)))
    assert fam.t2 is join(join(C(3), C(2)), join(C(2), C(1)))
    assert fam.common is join(join(C(3), C(1)), join(C(2), C(1)))
    # the seven-leaf common tree carries the same size-4 deck
    assert deck(fam.common, 4) == deck(fam.t1, 4) == deck(fam.t2, 4)


def test_family_construction_size5():
    fam = counterexample_family(5)
    assert fam.t1 is join(join(C(2), C(2)), C(1))
    assert fam.t2 is join(C(3), C(2))
    assert fam.common is None
    assert deck(fam.t1, 4).members == frozenset({complete(2), C(4)})


def test_family_size11_equal_decks():
    fam = counterexample_family(11)
    assert fam.deck_size == 6
    assert deck(fam.t1, 6) == deck(fam.t2, 6)
    assert multideck(fam.t1, 6).counts != multideck(fam.t2, 6).counts


@pytest.mark.parametrize("n", [5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20])
def test_families_verify(n):
    fam = counterexample_family(n)
    assert fam.t1.size == n and fam.t2.size == n
    check = verify_counterexample(fam)
    assert check, check.reason


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_unsupported_sizes(n):
    with pytest.raises(UnsupportedSizeError):
        counterexample_family(n)


def test_wrong_family_rejected_with_witness():
    fam = counterexample_family(9)
    wrong = join(join(C(4), C(2)), join(C(2), C(1)))
    bad = CounterexampleFamily(9, 3, 1, 6, fam.t1, wrong, fam.common)
    check = verify_counterexample(bad)
    assert not check
    assert check.reason == "size-6 decks differ"
    assert check.mismatch is caterpillar(6)


def test_wrong_size_family_rejected():
    fam = counterexample_family(8)
    bad = CounterexampleFamily(8, 2, 0, 4, fam.t1, caterpillar(9), fam.common)
    assert not verify_counterexample(bad)
