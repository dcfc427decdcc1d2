"""Size-j decks and multidecks of a shape.

The size-j multideck of a tree T counts, for every size-j shape, how
many j-element leaf subsets of T induce it; the deck is its support.
Two computations are provided and kept independent on purpose:

* :func:`multideck_bruteforce` enumerates every leaf subset and is the
  ground truth for all tests;
* :func:`multideck` / :func:`deck` run a dynamic program over the root
  decomposition: a j-subset lies entirely in one child or splits a+b=j
  across both, contributing ``join(A, B)`` with multiplicity
  ``m1(A) * m2(B)``.

Multiplicities are plain Python ints, so binomial-sized counts never
overflow.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from .errors import InconsistentMultideckError, InfeasibleError
from .shapes import TreeShape, join, to_text

__all__ = [
    "Deck",
    "MultiDeck",
    "DeckProfile",
    "induced_subtree",
    "multideck_bruteforce",
    "multideck",
    "deck",
    "deck_profile",
    "subtree_count",
    "project_multideck",
    "render_deck",
    "render_multideck",
]

# Refusal ceiling for subset enumeration, in subsets.
BRUTE_FORCE_LIMIT = 10_000_000


@dataclass(frozen=True)
class Deck:
    """The set of size-``size_class`` shapes induced by some tree."""

    size_class: int
    members: frozenset[TreeShape]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, shape: TreeShape) -> bool:
        return shape in self.members

    def sorted_members(self) -> list[TreeShape]:
        return sorted(self.members, key=lambda t: t.code)


@dataclass(frozen=True)
class MultiDeck:
    """Size-``size_class`` shapes with their induced-subset multiplicities."""

    size_class: int
    counts: Mapping[TreeShape, int]

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> frozenset[TreeShape]:
        return frozenset(self.counts)

    def to_deck(self) -> Deck:
        return Deck(self.size_class, self.support())

    def sorted_items(self) -> list[tuple[TreeShape, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0].code)


@dataclass(frozen=True)
class DeckProfile:
    """All per-size multidecks of one tree, sizes 1..n."""

    tree: TreeShape
    per_size: tuple[MultiDeck, ...] = field(repr=False)

    def multideck(self, j: int) -> MultiDeck:
        return self.per_size[j - 1]

    @property
    def subtree_count(self) -> int:
        """Number of distinct induced subtrees across all sizes."""
        return sum(len(md) for md in self.per_size)


# ---------------------------------------------------------------------------
# Induced subtrees
# ---------------------------------------------------------------------------

def induced_subtree(tree: TreeShape, leaves: Iterable[int]) -> TreeShape:
    """The shape induced by a set of leaf positions.

    Leaves are indexed 0..size-1 in left-to-right order of the
    canonical form.  The minimal connected subgraph spanning the chosen
    leaves is taken, rooted nearest the original root, with degree-2
    vertices suppressed.
    """
    idx = sorted(set(leaves))
    if not idx:
        raise ValueError("leaf set must be nonempty")
    if idx[0] < 0 or idx[-1] >= tree.size:
        raise ValueError(f"leaf indices must lie in [0, {tree.size}), got {idx[0] if idx[0] < 0 else idx[-1]}")
    return _induced(tree, 0, idx)


def _induced(t: TreeShape, base: int, idx: list[int]) -> TreeShape:
    # idx is sorted and lies within [base, base + t.size)
    if len(idx) == t.size:
        return t
    split = base + t.left.size
    cut = bisect_left(idx, split)
    if cut == len(idx):
        return _induced(t.left, base, idx)
    if cut == 0:
        return _induced(t.right, split, idx)
    return join(_induced(t.left, base, idx[:cut]), _induced(t.right, split, idx[cut:]))


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def multideck_bruteforce(tree: TreeShape, j: int, *, limit: int = BRUTE_FORCE_LIMIT) -> MultiDeck:
    """Exact multideck by enumerating all C(n, j) leaf subsets.

    Refuses with a work estimate when the subset count exceeds
    ``limit``.  Slow but independent of the dynamic program; every
    equivalence test leans on this.
    """
    from itertools import combinations

    n = tree.size
    _check_j(j, n)
    work = comb(n, j)
    if work > limit:
        raise InfeasibleError(f"brute-force multideck of a size-{n} tree at j={j}", work, limit)
    counts: dict[TreeShape, int] = {}
    for subset in combinations(range(n), j):
        s = _induced(tree, 0, list(subset))
        counts[s] = counts.get(s, 0) + 1
    return MultiDeck(j, counts)


def _check_j(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise ValueError(f"subtree size must satisfy 1 <= j <= {n}, got {j}")


# ---------------------------------------------------------------------------
# Dynamic program
# ---------------------------------------------------------------------------

def multideck(tree: TreeShape, j: int, *, _memo: dict | None = None) -> MultiDeck:
    """Multideck via the root-decomposition DP; equals the brute force.

    Pass a shared ``_memo`` dict when computing many multidecks over
    shapes with common subtrees; repeated subtrees collapse the state
    space.
    """
    _check_j(j, tree.size)
    memo = {} if _memo is None else _memo
    return MultiDeck(j, dict(_md(tree, j, memo)))


def _md(t: TreeShape, j: int, memo: dict) -> dict[TreeShape, int]:
    if j == t.size:
        return {t: 1}
    key = ("m", t, j)  # tagged so one memo can serve both DPs
    got = memo.get(key)
    if got is not None:
        return got
    a_tree, b_tree = t.left, t.right
    na, nb = a_tree.size, b_tree.size
    out: dict[TreeShape, int] = {}
    if na >= j:
        for s, m in _md(a_tree, j, memo).items():
            out[s] = out.get(s, 0) + m
    if nb >= j:
        for s, m in _md(b_tree, j, memo).items():
            out[s] = out.get(s, 0) + m
    lo = max(1, j - nb)
    hi = min(na, j - 1)
    for a in range(lo, hi + 1):
        da = _md(a_tree, a, memo)
        db = _md(b_tree, j - a, memo)
        for sa, ma in da.items():
            for sb, mb in db.items():
                s = join(sa, sb)
                out[s] = out.get(s, 0) + ma * mb
    memo[key] = out
    return out


def deck(tree: TreeShape, j: int, *, _memo: dict | None = None) -> Deck:
    """Deck via the same DP without multiplicities (cheaper)."""
    _check_j(j, tree.size)
    memo = {} if _memo is None else _memo
    return Deck(j, _dk(tree, j, memo))


def _dk(t: TreeShape, j: int, memo: dict) -> frozenset[TreeShape]:
    if j == t.size:
        return frozenset((t,))
    key = ("d", t, j)
    got = memo.get(key)
    if got is not None:
        return got
    a_tree, b_tree = t.left, t.right
    na, nb = a_tree.size, b_tree.size
    out: set[TreeShape] = set()
    if na >= j:
        out.update(_dk(a_tree, j, memo))
    if nb >= j:
        out.update(_dk(b_tree, j, memo))
    for a in range(max(1, j - nb), min(na, j - 1) + 1):
        da = _dk(a_tree, a, memo)
        db = _dk(b_tree, j - a, memo)
        for sa in da:
            for sb in db:
                out.add(join(sa, sb))
    result = frozenset(out)
    memo[key] = result
    return result


def deck_profile(tree: TreeShape) -> DeckProfile:
    """All multidecks of ``tree`` for sizes 1..n, sharing one memo table."""
    memo: dict = {}
    per_size = tuple(MultiDeck(j, dict(_md(tree, j, memo))) for j in range(1, tree.size + 1))
    return DeckProfile(tree, per_size)


def subtree_count(tree: TreeShape, *, _memo: dict | None = None) -> int:
    """Number of distinct induced subtrees of ``tree`` across all sizes."""
    memo = {} if _memo is None else _memo
    return sum(len(_dk(tree, j, memo)) for j in range(1, tree.size + 1))


# ---------------------------------------------------------------------------
# Projection to a smaller size
# ---------------------------------------------------------------------------

def project_multideck(md: MultiDeck, i: int, n: int) -> MultiDeck:
    """Recover the size-``i`` multideck from a size-j one of a size-``n`` tree.

    Pooling the size-i multidecks of the members (with multiplicity)
    counts every size-i subset once per size-j superset, i.e. exactly
    C(n-i, j-i) times, so dividing restores the true counts.  Counts
    that fail the total or the divisibility check mean the input was
    not a genuine multideck.
    """
    j = md.size_class
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    expected_total = comb(n, j)
    total = md.total()
    if total != expected_total:
        raise InconsistentMultideckError(
            f"total multiplicity {total} differs from C({n},{j}) = {expected_total}")
    memo: dict = {}
    pooled: dict[TreeShape, int] = {}
    for t, m in md.counts.items():
        if t.size != j:
            raise ValueError(f"multideck member {to_text(t)} has size {t.size}, expected {j}")
        for s, c in _md(t, i, memo).items():
            pooled[s] = pooled.get(s, 0) + m * c
    divisor = comb(n - i, j - i)
    counts: dict[TreeShape, int] = {}
    for s, v in pooled.items():
        q, r = divmod(v, divisor)
        if r:
            raise InconsistentMultideckError(
                f"pooled multiplicity {v} of {to_text(s)} is not divisible by C({n - i},{j - i}) = {divisor}")
        counts[s] = q
    return MultiDeck(i, counts)


# ---------------------------------------------------------------------------
# Structured text output
# ---------------------------------------------------------------------------

def render_deck(d: Deck) -> str:
    """One canonical-text shape per line, canonical order."""
    return "\n".join(to_text(t) for t in d.sorted_members())


def render_multideck(md: MultiDeck) -> str:
    """Lines ``<canonical-text> TAB <multiplicity>``, canonical order."""
    return "\n".join(f"{to_text(t)}\t{m}" for t, m in md.sorted_items())
