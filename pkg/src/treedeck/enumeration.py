"""Exhaustive, duplicate-free generation of all shapes of a given size.

Levels are built bottom-up: every size-n shape arises from exactly one
unordered pair of smaller shapes (its root decomposition), so pairing
each size-a shape with every size-(n-a) shape of code not below it
produces each shape once.  Built levels are cached and kept in
canonical code order, and the counts are cross-checkable against the
convolution recurrence in :func:`wedderburn`.
"""

from __future__ import annotations

from typing import Iterator

from .shapes import TreeShape, _intern, leaf

__all__ = ["all_shapes", "wedderburn", "shape_level"]

_W: list[int] = [0, 1]  # _W[n] = number of size-n shapes

_LEVELS: list[list[TreeShape]] = [[], [leaf()]]


def wedderburn(n: int) -> int:
    """Number of distinct shapes on ``n`` leaves, via the standard recurrence."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    while len(_W) <= n:
        m = len(_W)
        total = sum(_W[a] * _W[m - a] for a in range(1, (m - 1) // 2 + 1))
        if m % 2 == 0:
            half = _W[m // 2]
            total += half * (half + 1) // 2
        _W.append(total)
    return _W[n]


def shape_level(n: int) -> list[TreeShape]:
    """All size-``n`` shapes in canonical order (cached; do not mutate)."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    while len(_LEVELS) <= n:
        m = len(_LEVELS)
        out: list[TreeShape] = []
        for a in range(1, m // 2 + 1):
            la = _LEVELS[a]
            lb = _LEVELS[m - a]
            if a < m - a:
                # size order already canonical: the smaller side goes first
                for x in la:
                    for y in lb:
                        out.append(_intern(x, y))
            else:
                # equal sizes: the level is code-sorted, so y from x onward
                for i, x in enumerate(la):
                    for y in la[i:]:
                        out.append(_intern(x, y))
        out.sort(key=lambda t: t.code)
        _LEVELS.append(out)
    return _LEVELS[n]


def all_shapes(n: int) -> Iterator[TreeShape]:
    """Yield every size-``n`` shape exactly once, in canonical order."""
    yield from shape_level(n)
