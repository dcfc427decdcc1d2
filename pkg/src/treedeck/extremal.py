"""Extremal deck cardinalities and subtree counts.

Closed forms (:func:`g`, :func:`s_y_closed_form`) are kept strictly
separate from the exhaustive sweeps that verify them; the whole point
of the sweeps is that they do not reuse the formulas.  The brute-force
verifiers raise :class:`VerificationError` if enumeration ever
contradicts a prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decks import _dk, subtree_count
from .enumeration import shape_level, wedderburn
from .errors import InfeasibleError, VerificationError
from .shapes import TreeShape, caterpillar, complete, jellyfish, x_tree, y_tree, z_tree

__all__ = [
    "ExtremalReport",
    "g",
    "max_deck_bruteforce",
    "min_subtrees_bruteforce",
    "singleton_deck_shapes",
    "singleton_jdeck_check",
    "s_y_closed_form",
    "verify_xy_recurrences",
]

# Refusal ceiling for exhaustive sweeps, in shapes.
SWEEP_LIMIT = 100_000


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    quantity: str  # "max_deck" | "min_subtrees" | "singleton_deck"
    value: int
    achievers: tuple[TreeShape, ...]  # canonical order


def g(n: int) -> int:
    """Maximum possible (n-1)-deck cardinality of a size-n tree (closed form)."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    if n <= 2:
        return n - 1
    if n % 3 == 2:
        return 2 * (n // 3)
    return 2 * (n // 3) - 1


def _feasible(n: int, limit: int) -> None:
    count = wedderburn(n)
    if count > limit:
        raise InfeasibleError(f"exhaustive sweep over size-{n} shapes", count, limit)


def max_deck_bruteforce(n: int, *, limit: int = SWEEP_LIMIT) -> ExtremalReport:
    """Maximize the (n-1)-deck cardinality over every size-n shape.

    Confirms that the maximum equals :func:`g` and that the recursive
    family member of that size attains it.
    """
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    if n == 1:
        # the one-leaf tree has an empty deck
        return ExtremalReport(1, "max_deck", 0, (caterpillar(1),))
    _feasible(n, limit)
    memo: dict = {}
    best = -1
    achievers: list[TreeShape] = []
    for t in shape_level(n):
        v = len(_dk(t, n - 1, memo))
        if v > best:
            best = v
            achievers = [t]
        elif v == best:
            achievers.append(t)
    if best != g(n):
        raise VerificationError(f"max deck size at n={n} is {best}, closed form says {g(n)}")
    if z_tree(n) not in achievers:
        raise VerificationError(f"recursive max-deck tree of size {n} does not attain the maximum")
    return ExtremalReport(n, "max_deck", best, tuple(achievers))


def min_subtrees_bruteforce(n: int, *, limit: int = SWEEP_LIMIT) -> ExtremalReport:
    """Minimize the subtree count over every size-n shape.

    Confirms the minimum is n, attained by the caterpillar alone except
    at n = 4, where the balanced four-leaf tree ties it.
    """
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    _feasible(n, limit)
    memo: dict = {}
    best = None
    achievers: list[TreeShape] = []
    for t in shape_level(n):
        v = subtree_count(t, _memo=memo)
        if best is None or v < best:
            best = v
            achievers = [t]
        elif v == best:
            achievers.append(t)
    if best != n:
        raise VerificationError(f"min subtree count at n={n} is {best}, expected {n}")
    expected = {caterpillar(n)} | ({complete(2)} if n == 4 else set())
    if set(achievers) != expected:
        raise VerificationError(f"unexpected min-subtree achievers at n={n}")
    return ExtremalReport(n, "min_subtrees", best, tuple(achievers))


def _jellyfish_set(n: int) -> frozenset[TreeShape]:
    """All jellyfish shapes of size n: one per factorization n = 2**k * l, l >= 2."""
    out = set()
    k = 0
    m = n
    while m >= 2:
        out.add(jellyfish(k, m))
        if m % 2:
            break
        m //= 2
        k += 1
    return frozenset(out)


def singleton_deck_shapes(n: int, *, limit: int = SWEEP_LIMIT) -> frozenset[TreeShape]:
    """All size-n shapes whose (n-1)-deck is a singleton.

    Confirms these are exactly the jellyfish over the factorizations of
    n, the characterization of minimum-size decks.
    """
    if n < 2:
        raise ValueError(f"size must be >= 2, got {n}")
    _feasible(n, limit)
    memo: dict = {}
    found = frozenset(t for t in shape_level(n) if len(_dk(t, n - 1, memo)) == 1)
    expected = _jellyfish_set(n)
    if found != expected:
        raise VerificationError(f"singleton-deck shapes at n={n} are not the jellyfish set")
    return found


def singleton_jdeck_check(n: int, *, limit: int = SWEEP_LIMIT) -> bool:
    """True iff, for 4 <= j <= n-2, only the caterpillar has a singleton size-j deck."""
    if n < 5:
        raise ValueError(f"size must be >= 5, got {n}")
    _feasible(n, limit)
    cat = caterpillar(n)
    memo: dict = {}
    for t in shape_level(n):
        for j in range(4, n - 1):
            if len(_dk(t, j, memo)) == 1 and t is not cat:
                return False
    return True


def s_y_closed_form(m: int) -> int:
    """Closed-form subtree count 1 + 8 * 5**((m-6)/4) of the size-m member (m = 2 mod 4)."""
    if m < 6 or m % 4 != 2:
        raise ValueError(f"size must be 2 (mod 4) and >= 6, got {m}")
    return 1 + 8 * 5 ** ((m - 6) // 4)


def verify_xy_recurrences(n: int) -> bool:
    """Check both subtree-count recurrences of the X/Y family at offset n.

    For n = 1 (mod 4), n >= 5:
    S(Y_{n+5}) = 2 S(X_{n+4}) - S(Y_{n+1}) and
    S(X_{n+8}) = 4 S(Y_{n+5}) - S(X_{n+4}) - 2 S(Y_{n+1}),
    with every count computed from deck profiles, not the closed form.
    """
    if n < 5 or n % 4 != 1:
        raise ValueError(f"offset must be 1 (mod 4) and >= 5, got {n}")
    memo: dict = {}
    sy_small = subtree_count(y_tree(n + 1), _memo=memo)
    sx_mid = subtree_count(x_tree(n + 4), _memo=memo)
    sy_big = subtree_count(y_tree(n + 5), _memo=memo)
    sx_big = subtree_count(x_tree(n + 8), _memo=memo)
    return (sy_big == 2 * sx_mid - sy_small
            and sx_big == 4 * sy_big - sx_mid - 2 * sy_small)
