"""Determination experiments and reconstruction numbers.

Size-j (multi)decks *determine* size-n trees when no two distinct
size-n shapes share one.  The reconstruction number is the least such
j; determination is monotone in j (a larger deck pins down a smaller
one by projection), which justifies the downward sweep in
:func:`reconstruction_number`.

The module also builds the four families of same-deck tree pairs, one
per residue of n mod 4, that push the reconstruction number above
2*ceil(n/4).
"""

from __future__ import annotations

from dataclasses import dataclass

from .decks import _dk, _md
from .enumeration import shape_level, wedderburn
from .errors import InfeasibleError, UnsupportedSizeError
from .shapes import TreeShape, caterpillar, join, leaf

__all__ = [
    "DeterminationReport",
    "ReconstructionNumber",
    "CounterexampleFamily",
    "FamilyCheck",
    "decks_determine",
    "reconstruction_number",
    "counterexample_family",
    "verify_counterexample",
]

# Refusal ceiling for exhaustive determination, in shapes per level.
DETERMINE_LIMIT = 500_000


@dataclass(frozen=True)
class DeterminationReport:
    n: int
    j: int
    mode: str  # "deck" | "multideck"
    determined: bool
    witness: tuple[TreeShape, TreeShape] | None
    classes: int  # distinct fingerprints among the W_n shapes

    def __post_init__(self):
        assert self.determined == (self.witness is None)


@dataclass(frozen=True)
class ReconstructionNumber:
    n: int
    value: int
    mode: str


@dataclass(frozen=True)
class CounterexampleFamily:
    """Two nonisomorphic size-n trees with equal size-2k decks.

    ``common`` is a smaller tree sitting inside both whose deck they
    share; the smallest family (n = 5) has none.
    """

    n: int
    k: int
    residue: int
    deck_size: int
    t1: TreeShape
    t2: TreeShape
    common: TreeShape | None


@dataclass(frozen=True)
class FamilyCheck:
    """Outcome of :func:`verify_counterexample`; falsy when the family fails."""

    ok: bool
    reason: str | None = None
    mismatch: TreeShape | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_mode(mode: str) -> None:
    if mode not in ("deck", "multideck"):
        raise ValueError(f"mode must be 'deck' or 'multideck', got {mode!r}")


def decks_determine(n: int, j: int, mode: str = "deck", *,
                    limit: int = DETERMINE_LIMIT) -> DeterminationReport:
    """Group all size-n shapes by their size-j (multi)deck fingerprint.

    Determined iff every group is a singleton; otherwise the witness is
    the lexicographically least colliding pair by canonical code.
    """
    _check_mode(mode)
    if not 1 <= j <= n:
        raise ValueError(f"need 1 <= j <= n, got j={j}, n={n}")
    count = wedderburn(n)
    if count > limit:
        raise InfeasibleError(f"exhaustive determination at n={n}", count, limit)
    memo: dict = {}
    groups: dict[tuple, list[TreeShape]] = {}
    for t in shape_level(n):
        if mode == "deck":
            fp = tuple(sorted(s.code for s in _dk(t, j, memo)))
        else:
            fp = tuple(sorted((s.code, m) for s, m in _md(t, j, memo).items()))
        groups.setdefault(fp, []).append(t)
    colliding = [g for g in groups.values() if len(g) > 1]
    witness = None
    if colliding:
        # shape_level is canonically ordered, so g[0], g[1] are each
        # group's least pair; take the least pair across groups
        witness = min(((g[0], g[1]) for g in colliding),
                      key=lambda p: (p[0].code, p[1].code))
    return DeterminationReport(n, j, mode, witness is None, witness, len(groups))


def reconstruction_number(n: int, mode: str = "deck", *,
                          limit: int = DETERMINE_LIMIT) -> ReconstructionNumber:
    """Least j whose size-j (multi)decks determine the size-n trees.

    Sweeps j downward from n-1 and stops at the first failure, which is
    correct because determination is monotone in j.  Sizes up to 3 have
    a single shape each, so every fingerprint below j=4 collides and
    the sweep never needs to go lower.
    """
    _check_mode(mode)
    if n < 4:
        raise ValueError(f"reconstruction numbers are defined for n >= 4, got {n}")
    for j in range(n - 1, 3, -1):
        report = decks_determine(n, j, mode, limit=limit)
        if not report.determined:
            return ReconstructionNumber(n, j + 1, mode)
    return ReconstructionNumber(n, 4, mode)


def counterexample_family(n: int) -> CounterexampleFamily:
    """The same-deck pair of size-n trees for the matching residue of n mod 4.

    Supported sizes: 5, 6, and every n >= 8 except none are skipped;
    n = 7 has no defined family (the residue-3 construction needs
    k >= 3, i.e. n >= 11).
    """
    c = caterpillar
    r = n % 4
    if r == 0:
        k = n // 4
        if k < 2:
            raise UnsupportedSizeError(f"size {n} needs k >= 2 in the 4k family")
        t1 = join(join(c(k + 1), c(k - 1)), join(c(k), c(k)))
        t2 = join(join(c(k + 1), c(k)), join(c(k), c(k - 1)))
        s = join(join(c(k + 1), c(k - 1)), join(c(k), c(k - 1)))
    elif r == 3:
        k = (n + 1) // 4
        if k < 3:
            raise UnsupportedSizeError(
                f"size {n} has no family: the (4k-1) construction needs k >= 3, so 11 is its smallest case")
        t1 = join(join(c(k + 1), c(k)), join(c(k), c(k - 2)))
        t2 = join(join(c(k + 1), c(k - 1)), join(c(k), c(k - 1)))
        s = join(join(c(k + 1), c(k - 1)), join(c(k), c(k - 2)))
    elif r == 2:
        k = (n + 2) // 4
        if k < 2:
            raise UnsupportedSizeError(f"size {n} needs k >= 2 in the (4k-2) family")
        t1 = join(join(c(k), c(k - 1)), join(c(k), c(k - 1)))
        t2 = join(join(c(k), c(k)), join(c(k - 1), c(k - 1)))
        s = join(join(c(k), c(k - 1)), join(c(k - 1), c(k - 1)))
    else:
        k = (n + 3) // 4
        if k < 2:
            raise UnsupportedSizeError(f"size {n} needs k >= 2 in the (4k-3) family")
        if k == 2:
            t1 = join(join(c(2), c(2)), leaf())
            t2 = join(c(3), c(2))
            s = None
        else:
            t1 = join(join(c(k), c(k)), join(c(k - 1), c(k - 2)))
            t2 = join(join(c(k), c(k - 1)), join(c(k), c(k - 2)))
            s = join(join(c(k), c(k - 1)), join(c(k - 1), c(k - 2)))
    return CounterexampleFamily(n, k, r, 2 * k, t1, t2, s)


def verify_counterexample(fam: CounterexampleFamily) -> FamilyCheck:
    """Check a family end to end with the deck DP.

    Confirms the trees are distinct, that their decks at the family's
    size agree (and agree with the common tree's, which must sit inside
    both), and that the multidecks at that size still differ, so the
    family says nothing against multideck reconstruction.
    """
    j = fam.deck_size
    memo: dict = {}
    if fam.t1.size != fam.n or fam.t2.size != fam.n:
        return FamilyCheck(False, f"trees do not both have size {fam.n}")
    if fam.t1 is fam.t2:
        return FamilyCheck(False, "trees are isomorphic")
    d1 = _dk(fam.t1, j, memo)
    d2 = _dk(fam.t2, j, memo)
    if d1 != d2:
        diff = min(d1 ^ d2, key=lambda t: t.code)
        return FamilyCheck(False, f"size-{j} decks differ", diff)
    if fam.common is not None:
        s = fam.common
        ds = _dk(s, j, memo)
        if ds != d1:
            diff = min(ds ^ d1, key=lambda t: t.code)
            return FamilyCheck(False, f"common tree's size-{j} deck differs", diff)
        if s not in _dk(fam.t1, s.size, memo) or s not in _dk(fam.t2, s.size, memo):
            return FamilyCheck(False, "common tree is not an induced subtree of both")
    m1 = _md(fam.t1, j, memo)
    m2 = _md(fam.t2, j, memo)
    if m1 == m2:
        return FamilyCheck(False, f"size-{j} multidecks coincide as well")
    return FamilyCheck(True)
