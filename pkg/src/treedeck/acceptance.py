"""The acceptance suite: one callable per criterion.

Each criterion raises ``AssertionError`` (or lets a library error
escape) on failure and returns quietly on success.  ``level`` selects
how much ground to cover: ``quick`` trims ranges for smoke runs,
``full`` runs the complete suite, ``extended`` adds the exhaustive
k = 11 universal search.  The ``treedeck verify-all`` subcommand and
``tests/test_acceptance.py`` both execute this registry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Callable

from .decks import multideck, multideck_bruteforce, project_multideck, subtree_count
from .enumeration import shape_level, wedderburn
from .extremal import (
    g,
    max_deck_bruteforce,
    min_subtrees_bruteforce,
    s_y_closed_form,
    singleton_deck_shapes,
    singleton_jdeck_check,
    verify_xy_recurrences,
)
from .reconstruct import counterexample_family, decks_determine, reconstruction_number, verify_counterexample
from .shapes import TreeShape, caterpillar, complete, join, leaf, root_split, to_text, y_tree
from .universal import is_universal, kalmar_terms, known_universal_trees, min_universal_size

_LEVELS = ("quick", "full", "extended")


@dataclass(frozen=True)
class Criterion:
    ident: str
    name: str
    run: Callable[[str], None]
    extended_only: bool = False


def _pick(level: str, quick, full):
    return quick if level == "quick" else full


def _random_shape(rng: random.Random, n: int) -> TreeShape:
    if n == 1:
        return leaf()
    a = rng.randint(1, n - 1)
    return join(_random_shape(rng, a), _random_shape(rng, n - a))


# -- 1: enumeration ----------------------------------------------------------

def _c1(level: str) -> None:
    top = _pick(level, 12, 16)
    for n in range(1, top + 1):
        lvl = shape_level(n)
        assert len(lvl) == wedderburn(n), f"generator count at n={n}"
        codes = [t.code for t in lvl]
        assert codes == sorted(codes) and len(set(codes)) == len(codes), f"stream order at n={n}"
    c, b2 = caterpillar, complete(2)
    assert shape_level(4) == [c(4), b2]
    assert shape_level(5) == [c(5), join(leaf(), b2), join(c(2), c(3))]
    assert shape_level(6) == [c(6), join(leaf(), join(leaf(), b2)), join(leaf(), join(c(2), c(3))),
                              join(c(2), c(4)), join(c(2), b2), join(c(3), c(3))]


# -- 2: multideck fixtures ---------------------------------------------------

def _c2(level: str) -> None:
    c, b2 = caterpillar, complete(2)
    ref4 = (c(4), b2)
    pairs = [tuple(multideck(t, 4).counts.get(r, 0) for r in ref4) for t in shape_level(5)]
    assert pairs == [(5, 0), (4, 1), (2, 3)], pairs
    ref5 = (c(5), join(leaf(), b2), join(c(2), c(3)))
    trips = [tuple(multideck(t, 5).counts.get(r, 0) for r in ref5) for t in shape_level(6)]
    # triplets frozen from the subset-enumeration oracle, re-checked below
    assert trips == [(6, 0, 0), (4, 2, 0), (2, 3, 1), (2, 0, 4), (0, 2, 4), (0, 0, 6)], trips
    oracle = [tuple(multideck_bruteforce(t, 5).counts.get(r, 0) for r in ref5) for t in shape_level(6)]
    assert oracle == trips


# -- 3: DP vs oracle ---------------------------------------------------------

def _c3(level: str) -> None:
    top, samples, max_rand = _pick(level, (8, 40, 12), (10, 200, 16))
    memo: dict = {}
    for n in range(1, top + 1):
        for t in shape_level(n):
            for j in range(1, n + 1):
                assert multideck(t, j, _memo=memo).counts == multideck_bruteforce(t, j).counts, \
                    f"DP/oracle mismatch at {to_text(t)} j={j}"
    rng = random.Random(0x5EED)
    for _ in range(samples):
        n = rng.randint(2, max_rand)
        t = _random_shape(rng, n)
        j = rng.randint(1, min(8, n))
        assert multideck(t, j, _memo=memo).counts == multideck_bruteforce(t, j).counts, \
            f"DP/oracle mismatch at random {to_text(t)} j={j}"


# -- 4: projection -----------------------------------------------------------

def _c4(level: str) -> None:
    top = _pick(level, 7, 9)
    memo: dict = {}
    for n in range(2, top + 1):
        for t in shape_level(n):
            for j in range(2, n + 1):
                mdj = multideck(t, j, _memo=memo)
                for i in range(1, j):
                    proj = project_multideck(mdj, i, n)
                    assert proj.counts == multideck(t, i, _memo=memo).counts, \
                        f"projection mismatch at {to_text(t)} j={j} i={i}"
    # the i = j-1 projection divides by C(n-j+1, 1) = n-j+1
    for n, j in ((9, 5), (12, 11), (6, 2)):
        assert comb(n - j + 1, 1) == n - j + 1


# -- 5: small reconstruction numbers ----------------------------------------

def _c5(level: str) -> None:
    assert reconstruction_number(4, "deck").value == 4
    assert reconstruction_number(5, "deck").value == 5
    assert reconstruction_number(4, "multideck").value == 4
    assert reconstruction_number(5, "multideck").value == 4
    assert decks_determine(6, 5, "deck").determined


# -- 6: same-deck families and the lower bound -------------------------------

def _c6(level: str) -> None:
    fam_top, rn_top = _pick(level, (14, 9), (24, 11))
    for n in range(6, fam_top + 1):
        if n == 7:  # no family is defined at size 7
            continue
        fam = counterexample_family(n)
        check = verify_counterexample(fam)
        assert check, f"family at n={n}: {check.reason}"
    for n in range(6, rn_top + 1):
        value = reconstruction_number(n, "deck").value
        assert value > 2 * ((n + 3) // 4), f"lower bound violated at n={n}: R={value}"


# -- 7: (n-1)-decks determine ------------------------------------------------

def _c7(level: str) -> None:
    top = _pick(level, 10, 12)
    for n in range(6, top + 1):
        assert decks_determine(n, n - 1, "deck").determined, f"(n-1)-decks fail at n={n}"


# -- 8: singleton decks ------------------------------------------------------

def _c8(level: str) -> None:
    top = _pick(level, 10, 12)
    for n in range(2, top + 1):
        singleton_deck_shapes(n)  # raises VerificationError on mismatch
    for n in range(7, top + 1):
        assert singleton_jdeck_check(n), f"non-caterpillar singleton j-deck at n={n}"


# -- 9: minimum subtree counts -----------------------------------------------

def _c9(level: str) -> None:
    top = _pick(level, 9, 12)
    for n in range(1, top + 1):
        min_subtrees_bruteforce(n)  # raises VerificationError on mismatch


# -- 10: maximum deck sizes --------------------------------------------------

def _c10(level: str) -> None:
    top = _pick(level, 11, 14)
    for n in range(3, top + 1):
        rep = max_deck_bruteforce(n)  # value == g(n) and family membership checked inside
        if n % 3 == 0:
            whole = frozenset({1, n - 1})
            assert all(root_split(t) == whole for t in rep.achievers), \
                f"max-deck achiever root split at n={n}"


# -- 11: the subtree-rich family ---------------------------------------------

def _c11(level: str) -> None:
    assert subtree_count(y_tree(6)) == 9
    assert subtree_count(y_tree(10)) == 41
    assert subtree_count(y_tree(14)) == 201 == s_y_closed_form(14)
    assert verify_xy_recurrences(5)
    assert verify_xy_recurrences(9)
    # the order-2 recurrence seeded by the two computed values must
    # reproduce the closed form
    a, b = 9, 41
    m = 14
    while m <= 30:
        a, b = b, 6 * b - 5 * a
        assert b == s_y_closed_form(m), f"recurrence drifts from closed form at m={m}"
        m += 4


# -- 12: universality table ---------------------------------------------------

_U_TABLE = {1: 1, 2: 2, 3: 3, 4: 5, 5: 6, 6: 9, 7: 10, 8: 14, 9: 16, 10: 19}
_WITNESS_COUNTS = {4: 2, 5: 1, 6: 6, 7: 1, 8: 8, 9: 8, 10: 2}


def _c12(level: str) -> None:
    top = _pick(level, 8, 10)
    for k in range(1, top + 1):
        cert = min_universal_size(k)
        assert cert.exhaustive, f"k={k} search not exhaustive"
        assert cert.u_value == _U_TABLE[k], f"u({k}) = {cert.u_value}, expected {_U_TABLE[k]}"
        if k >= 4:
            assert len(cert.witnesses) == _WITNESS_COUNTS[k], \
                f"witness count at k={k}: {len(cert.witnesses)}"
        assert set(cert.witnesses) == set(known_universal_trees(k)), f"witness set at k={k}"
    big = known_universal_trees(12)[0]
    assert big.size == 28 and is_universal(big, 12), "28-leaf witness fails at k=12"
    assert kalmar_terms(12).terms == (1, 2, 3, 5, 6, 9, 10, 14, 16, 19, 20, 28)


def _c12b(level: str) -> None:
    cert = min_universal_size(11)
    assert cert.exhaustive and cert.u_value == 21 and len(cert.witnesses) == 1
    assert set(cert.witnesses) == set(known_universal_trees(11))
    assert kalmar_terms(11).term(11) == 20 != cert.u_value


# -- 13: determinism -----------------------------------------------------------

_DETERMINISM_COMMANDS = (
    ["enumerate", "--n", "8"],
    ["deck", "--tree", "(*,(*,(*,(*,(*,*)))))", "--j", "4"],
    ["multideck", "--tree", "((*,*),((*,*),(*,*)))", "--j", "5"],
    ["reconstruct", "--n", "7"],
    ["counterexample", "--n", "9"],
    ["extremal", "--n", "9", "--quantity", "singleton"],
    ["universal", "--k", "6"],
    ["kalmar", "--upto", "12"],
)


def _c13(level: str) -> None:
    import contextlib
    import io

    from . import cli

    for argv in _DETERMINISM_COMMANDS:
        outputs = []
        for threads in ("1", "4"):
            buf = io.StringIO()
            err = io.StringIO()
            with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
                code = cli.run([*argv, "--threads", threads])
            assert code == 0, f"{argv} exited {code}"
            outputs.append(buf.getvalue())
        assert outputs[0] == outputs[1], f"output differs across thread counts for {argv}"


CRITERIA: tuple[Criterion, ...] = (
    Criterion("1", "enumeration counts and small-size shape sets", _c1),
    Criterion("2", "small-size multideck fixtures", _c2),
    Criterion("3", "DP equals subset-enumeration oracle", _c3),
    Criterion("4", "multideck projection", _c4),
    Criterion("5", "small reconstruction numbers", _c5),
    Criterion("6", "same-deck families and lower bound", _c6),
    Criterion("7", "(n-1)-decks determine", _c7),
    Criterion("8", "singleton-deck characterizations", _c8),
    Criterion("9", "minimum subtree counts", _c9),
    Criterion("10", "maximum deck sizes", _c10),
    Criterion("11", "subtree-rich family values", _c11),
    Criterion("12", "universality table through k=10", _c12),
    Criterion("12b", "exhaustive k=11 search", _c12b, extended_only=True),
    Criterion("13", "byte-identical reports across thread counts", _c13),
)


def criteria_for(level: str) -> tuple[Criterion, ...]:
    if level not in _LEVELS:
        raise ValueError(f"level must be one of {_LEVELS}, got {level!r}")
    if level == "extended":
        return CRITERIA
    return tuple(c for c in CRITERIA if not c.extended_only)
