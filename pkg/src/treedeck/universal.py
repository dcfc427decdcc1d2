"""k-universal trees: decision, minimum-size search, reference catalog.

A shape is k-universal when its size-k deck contains every size-k
shape.  ``u(k)`` denotes the least leaf count of such a shape.  The
exhaustive search lives in :mod:`treedeck._bitsearch`; this module adds
the decision procedure, certificates, a catalog of known minimum-size
witnesses (exact for k <= 11, best known for k = 12) used for upper
bounds and cross-checks, and the ordered-factorization partial-sum
sequence whose early terms track the computed table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ._bitsearch import CacheLog, scan_min_universal
from .decks import _dk
from .enumeration import wedderburn
from .errors import InfeasibleError
from .shapes import TreeShape, caterpillar, complete, join, leaf

__all__ = [
    "SearchCertificate",
    "KalmarSequence",
    "is_universal",
    "min_universal_size",
    "all_min_universal",
    "known_universal_trees",
    "kalmar_terms",
]

# Beyond this k an exhaustive proof exceeds desk scale; by default only
# the catalog witness is verified, giving an upper bound.
EXHAUSTIVE_K_CEILING = 11


@dataclass(frozen=True)
class SearchCertificate:
    """Outcome of a minimum-size search.

    When ``exhaustive`` is true, every size below ``u_value`` was fully
    refuted and ``witnesses`` holds *all* minimum-size k-universal
    shapes.  Otherwise ``u_value`` is only an upper bound coming from a
    verified known witness (or ``None`` when nothing is known).
    """

    k: int
    u_value: int | None
    witnesses: tuple[TreeShape, ...]
    explored: int
    exhaustive: bool


@dataclass(frozen=True)
class KalmarSequence:
    """Partial sums of ordered-factorization counts, 1-indexed."""

    terms: tuple[int, ...]

    def term(self, k: int) -> int:
        return self.terms[k - 1]


def is_universal(tree: TreeShape, k: int) -> bool:
    """True iff the size-k deck of ``tree`` has all W_k members."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > tree.size:
        warnings.warn(f"k={k} exceeds the tree size {tree.size}; returning False",
                      RuntimeWarning, stacklevel=2)
        return False
    if k <= 3:
        return True
    return len(_dk(tree, k, {})) == wedderburn(k)


# ---------------------------------------------------------------------------
# Known minimum-size witnesses
# ---------------------------------------------------------------------------

def _catalog() -> dict[int, tuple[TreeShape, ...]]:
    c = caterpillar
    b2 = complete(2)
    u4_1 = join(c(3), c(2))
    u4_2 = join(join(c(2), c(2)), c(1))
    u5 = join(u4_1, c(1))
    u6 = (
        join(join(join(c(3), c(3)), c(2)), c(1)),
        join(join(join(c(3), c(3)), c(1)), c(2)),
        join(join(u4_1, c(3)), c(1)),
        join(join(u4_2, c(3)), c(1)),
        join(join(c(4), b2), c(1)),
        join(u5, c(3)),
    )
    u7 = join(join(u5, c(3)), c(1))
    u8 = (
        join(join(join(join(u4_2, c(1)), u4_1), c(2)), c(1)),
        join(join(join(join(u4_2, c(1)), u4_1), c(1)), c(2)),
        join(join(join(u5, u4_1), c(2)), c(1)),
        join(join(join(u5, u4_1), c(1)), c(2)),
        join(join(join(u5, u4_2), c(2)), c(1)),
        join(join(join(u5, u4_2), c(1)), c(2)),
        join(join(join(join(c(4), c(2)), u4_2), c(2)), c(1)),
        join(join(join(join(c(4), c(2)), u4_2), c(1)), c(2)),
    )
    u9 = (
        join(join(join(join(join(u4_2, c(1)), u4_1), c(1)), c(3)), c(1)),
        join(join(join(join(u5, u4_1), c(1)), c(3)), c(1)),
        join(join(join(join(u5, u4_2), c(1)), c(3)), c(1)),
        join(join(join(join(join(c(4), c(2)), u4_2), c(1)), c(3)), c(1)),
        join(join(join(join(u5, c(4)), c(1)), b2), c(1)),
        join(join(join(join(u5, b2), c(1)), c(4)), c(1)),
        join(join(u7, u4_1), c(1)),
        join(join(u7, u4_2), c(1)),
    )
    u10 = (
        join(join(join(u7, u5), c(1)), c(2)),
        join(join(join(u7, u5), c(2)), c(1)),
    )
    u11 = join(join(join(join(u7, u5), c(1)), c(3)), c(1))
    u12 = join(join(join(join(u8[0], u6[0]), c(1)), c(3)), c(1))
    return {
        1: (leaf(),),
        2: (c(2),),
        3: (c(3),),
        4: (u4_1, u4_2),
        5: (u5,),
        6: u6,
        7: (u7,),
        8: u8,
        9: u9,
        10: u10,
        11: (u11,),
        12: (u12,),
    }


_CATALOG: dict[int, tuple[TreeShape, ...]] | None = None


def known_universal_trees(k: int) -> tuple[TreeShape, ...] | None:
    """Cataloged minimum-size k-universal shapes, canonical order.

    Exact and complete for k <= 11; for k = 12 a single 28-leaf witness
    (best known, not proven minimal).  ``None`` beyond the catalog.
    """
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _catalog()
    trees = _CATALOG.get(k)
    if trees is None:
        return None
    return tuple(sorted(trees, key=lambda t: t.code))


def _verified_upper_bound(k: int, explored: int) -> SearchCertificate:
    trees = known_universal_trees(k)
    if trees is None:
        return SearchCertificate(k, None, (), explored, False)
    for t in trees:
        if not is_universal(t, k):
            raise AssertionError(f"cataloged witness for k={k} failed verification")
    return SearchCertificate(k, trees[0].size, trees, explored, False)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def min_universal_size(k: int, *, budget: int | None = None,
                       max_size: int | None = None,
                       cache_path=None,
                       on_level=None) -> SearchCertificate:
    """Search ascending sizes for the least k-universal shape.

    All witnesses at the minimal size are collected before stopping.
    ``budget`` caps the number of shapes scanned (deterministic work
    units, not seconds).  Without an explicit budget, k above
    ``EXHAUSTIVE_K_CEILING`` is not searched: the catalog witness is
    verified instead and returned as a non-exhaustive upper bound.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k <= 3:
        # the unique size-k shape is the one and only minimum witness
        return SearchCertificate(k, k, (caterpillar(k),), k, True)
    if budget is None and max_size is None and k > EXHAUSTIVE_K_CEILING:
        return _verified_upper_bound(k, 0)
    log = CacheLog(cache_path) if cache_path is not None else None
    outcome = scan_min_universal(k, budget=budget, max_size=max_size,
                                 log=log, on_level=on_level)
    if outcome.found_size is None:
        # fall back to a verified catalog witness as the best-known bound
        return _verified_upper_bound(k, outcome.explored)
    return SearchCertificate(k, outcome.found_size, outcome.witnesses,
                             outcome.explored, True)


def all_min_universal(k: int, **kwargs) -> tuple[TreeShape, ...]:
    """The complete set of minimum-size k-universal shapes, canonical order.

    Refuses when the underlying search did not finish exhaustively.
    """
    cert = min_universal_size(k, **kwargs)
    if not cert.exhaustive:
        raise InfeasibleError(
            f"minimum witnesses for k={k} require an exhaustive search; "
            f"raise the budget or the exhaustive ceiling",
            estimate=cert.explored + 1, limit=cert.explored)
    return cert.witnesses


# ---------------------------------------------------------------------------
# Comparison sequence
# ---------------------------------------------------------------------------

def kalmar_terms(upto: int) -> KalmarSequence:
    """Partial sums of the ordered-factorization counts a(n).

    a(1) = 1 and a(n) = sum of a(d) over proper divisors d of n; the
    running sums form the sequence whose first terms happen to track
    the computed u(k) values.
    """
    if upto < 1:
        raise ValueError(f"upto must be >= 1, got {upto}")
    a = [0] * (upto + 1)
    a[1] = 1
    for d in range(1, upto + 1):
        ad = a[d]
        for m in range(2 * d, upto + 1, d):
            a[m] += ad
    terms = []
    running = 0
    for n in range(1, upto + 1):
        running += a[n]
        terms.append(running)
    return KalmarSequence(tuple(terms))
