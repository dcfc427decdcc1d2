"""Scan core for the minimum-size universal-tree search.

Scans every shape of size n = k, k+1, ... until one whose size-k deck
contains all W_k size-k shapes appears, then collects every witness of
that size.  Built for throughput:

* shapes live in flat integer arrays (child ids), never as objects;
* deck membership is tracked as bitmasks over the canonical size-i
  enumerations for 4 <= i <= k (sizes up to 3 have a single shape and
  are always covered);
* per shape only a *coverage fingerprint* id is stored: the tuple of
  masks for sizes up to its own size exclusive.  The shape's own
  identity enters a parent's masks through exactly one bit, so a pair
  evaluation splits into a coverage part keyed by two fingerprint ids
  (heavily shared) and two one-sided parts keyed by (shape, coverage)
  - all three memoized per level.

The mask recurrence mirrors the deck DP: a size-i leaf subset of
T = A + B lies entirely in A, entirely in B, or splits s + t = i, in
which case it contributes the join of a size-s member of A's deck with
a size-t member of B's deck.  Join bits come from tables recorded
while the level of size s + t was itself being enumerated.

Everything here is deterministic: iteration is over ranges and bit
positions, never over unordered containers.
"""

from __future__ import annotations

import time
from array import array
from dataclasses import dataclass
from typing import Callable

from .enumeration import wedderburn
from .shapes import TreeShape, join, leaf

__all__ = ["ScanOutcome", "scan_min_universal", "CacheLog"]


@dataclass(frozen=True)
class ScanOutcome:
    k: int
    found_size: int | None
    witnesses: tuple[TreeShape, ...]
    explored: int
    exhaustive: bool


@dataclass(frozen=True)
class LevelStats:
    size: int
    shapes: int
    fingerprints: int
    witnesses: int
    seconds: float


class CacheLog:
    """Append-only progress log for interruptible searches.

    One record per fully scanned level, tab-separated:

        k=<k>  n=<n>  range=<start>:<end>  verdict=<none|witnesses=<count>>

    ``range`` is the half-open index range of scanned shapes within the
    level (a single full range here; partitioned writers may append
    several).  On reuse the log is replayed: re-scanned levels must
    reproduce the recorded verdict, and already-recorded levels are not
    re-appended.
    """

    def __init__(self, path):
        self.path = path
        self._seen: dict[tuple[int, int], str] = {}
        try:
            with open(path, "r", encoding="ascii") as fh:
                for line in fh:
                    rec = self._parse(line)
                    if rec is not None:
                        self._seen[(rec[0], rec[1])] = rec[2]
        except FileNotFoundError:
            pass

    @staticmethod
    def _parse(line: str):
        parts = line.strip().split("\t")
        if len(parts) != 4:
            return None
        try:
            k = int(parts[0].removeprefix("k="))
            n = int(parts[1].removeprefix("n="))
        except ValueError:
            return None
        return (k, n, parts[3].removeprefix("verdict="))

    def recorded_verdict(self, k: int, n: int) -> str | None:
        return self._seen.get((k, n))

    def record(self, k: int, n: int, count: int, verdict: str) -> None:
        prior = self._seen.get((k, n))
        if prior is not None:
            if prior != verdict:
                raise RuntimeError(
                    f"cache log {self.path!r} records verdict {prior!r} for k={k} n={n}, "
                    f"but the scan found {verdict!r}")
            return
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(f"k={k}\tn={n}\trange=0:{count}\tverdict={verdict}\n")
        self._seen[(k, n)] = verdict


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Scan:
    def __init__(self, k: int):
        assert k >= 4  # sizes up to 3 are degenerate and handled by the caller
        self.k = k
        self.full = [0] * (k + 1)
        for i in range(1, k + 1):
            self.full[i] = (1 << wedderburn(i)) - 1
        # flat shape store; gid 0 is the leaf
        self.left = array("q", [-1])
        self.right = array("q", [-1])
        self.offsets = [0, 0, 1]  # offsets[m] = first gid of size m
        # coverage fingerprints
        self.fp_tuples: list[tuple] = [(1,)]
        self.fp_ids: dict[tuple, int] = {(1,): 0}
        self.fp = array("q", [0])
        # join-bit tables per (s, t), s + t <= k:
        # (rows, row_full, col_full, all_full)
        self.joins: dict[tuple[int, int], tuple] = {}

    # -- pair evaluation ----------------------------------------------------

    def _base_vec(self, ta: tuple, tb: tuple, top: int) -> tuple[int, ...]:
        """Coverage-only masks of A+B for sizes 4..top (no self bits)."""
        sa, sb = ta[0], tb[0]
        # largest subtree size on each side usable without the self bit
        acov = sa if sa <= 3 else sa - 1
        bcov = sb if sb <= 3 else sb - 1
        full = self.full
        joins = self.joins
        out = []
        for i in range(4, top + 1):
            full_i = full[i]
            acc = ta[i - 3] if sa > i else 0
            if sb > i:
                acc |= tb[i - 3]
            if acc != full_i:
                lo = i - bcov
                if lo < 1:
                    lo = 1
                hi = acov if acov < i - 1 else i - 1
                for s in range(lo, hi + 1):
                    t = i - s
                    ma = 1 if s <= 3 else ta[s - 3]
                    mb = 1 if t <= 3 else tb[t - 3]
                    rows, row_full, col_full, all_full = joins[(s, t)]
                    if ma == full[s]:
                        if mb == full[t]:
                            acc |= all_full
                        else:
                            for y in _bits(mb):
                                acc |= col_full[y]
                    elif mb == full[t]:
                        for x in _bits(ma):
                            acc |= row_full[x]
                    else:
                        for x in _bits(ma):
                            row = rows[x]
                            for y in _bits(mb):
                                acc |= row[y]
                    if acc == full_i:
                        break
            out.append(acc)
        return tuple(out)

    def _self_vec(self, size: int, idx: int, other: tuple, top: int) -> tuple[int, ...]:
        """Contributions that use one side's own shape whole (size >= 4)."""
        joins = self.joins
        sb = other[0]
        bcov = sb if sb <= 3 else sb - 1
        out = []
        point = 1 << idx
        for i in range(4, top + 1):
            if i == size:
                out.append(point)
                continue
            if i < size:
                out.append(0)
                continue
            t = i - size
            if t > bcov:
                out.append(0)
                continue
            mb = 1 if t <= 3 else other[t - 3]
            rows = joins[(size, t)][0]
            row = rows[idx]
            acc = 0
            for y in _bits(mb):
                acc |= row[y]
            out.append(acc)
        return tuple(out)

    # -- level construction --------------------------------------------------

    def build_level(self, m: int) -> list[int]:
        """Enumerate all size-m shapes; returns gids of k-universal ones."""
        k = self.k
        left, right, fparr = self.left, self.right, self.fp
        offsets = self.offsets
        fp_tuples = self.fp_tuples
        top = m - 1 if m - 1 < k else k
        nmasks = top - 3
        zeros = (0,) * nmasks
        record_bits = m <= k
        full_k = self.full[k]
        kpos = k - 4  # index of the size-k mask within a vector, when top == k
        check_full = m > k
        witnesses: list[int] = []
        start = len(left)
        base_cache: dict = {}
        sa_cache: dict = {}
        sb_cache: dict = {}
        fp_ids = self.fp_ids
        raw_rows: dict[tuple[int, int], list] = {}
        for a in range(1, m // 2 + 1):
            b = m - a
            oa, ob = offsets[a], offsets[a + 1]
            ca = ob - oa
            obb = offsets[b]
            cb = offsets[b + 1] - obb
            if record_bits:
                rows = [[0] * cb for _ in range(ca)]
                raw_rows[(a, b)] = rows
            a_selfless = a <= 3 or a > k
            b_selfless = b <= 3 or b > k
            for ia in range(ca):
                ga = oa + ia
                tfa = fparr[ga]
                ta = fp_tuples[tfa]
                for ib in range(ia if a == b else 0, cb):
                    gb = obb + ib
                    tfb = fparr[gb]

                    bkey = (tfa, tfb)
                    basev = base_cache.get(bkey)
                    if basev is None:
                        basev = self._base_vec(ta, fp_tuples[tfb], top)
                        base_cache[bkey] = basev

                    if a_selfless:
                        sav = zeros
                    else:
                        skey = (ga, tfb)
                        sav = sa_cache.get(skey)
                        if sav is None:
                            sav = self._self_vec(a, ia, fp_tuples[tfb], top)
                            sa_cache[skey] = sav
                    if b_selfless:
                        sbv = zeros
                    else:
                        skey = (gb, tfa)
                        sbv = sb_cache.get(skey)
                        if sbv is None:
                            sbv = self._self_vec(b, ib, ta, top)
                            sb_cache[skey] = sbv

                    if sav is zeros and sbv is zeros:
                        merged = basev
                    else:
                        merged = tuple(x | y | z for x, y, z in zip(basev, sav, sbv))

                    g = len(left)
                    left.append(ga)
                    right.append(gb)
                    tup = (m, *merged)
                    fid = fp_ids.get(tup)
                    if fid is None:
                        fid = len(fp_tuples)
                        fp_ids[tup] = fid
                        fp_tuples.append(tup)
                    fparr.append(fid)
                    if record_bits:
                        bit = 1 << (g - start)
                        rows[ia][ib] = bit
                        if a == b and ia != ib:
                            rows[ib][ia] = bit
                    if check_full and merged[kpos] == full_k:
                        witnesses.append(g)
        offsets.append(len(left))
        if record_bits:
            for (a, b), rows in raw_rows.items():
                row_full = [0] * len(rows)
                col_full = [0] * (len(rows[0]) if rows else 0)
                all_full = 0
                for x, row in enumerate(rows):
                    acc = 0
                    for y, bit in enumerate(row):
                        acc |= bit
                        col_full[y] |= bit
                    row_full[x] = acc
                    all_full |= acc
                self.joins[(a, b)] = (rows, row_full, col_full, all_full)
                if a != b:
                    rows_t = [[rows[x][y] for x in range(len(rows))] for y in range(len(col_full))]
                    self.joins[(b, a)] = (rows_t, col_full, row_full, all_full)
        return witnesses

    def level_fingerprints(self, m: int) -> int:
        lo, hi = self.offsets[m], self.offsets[m + 1]
        return len(set(self.fp[lo:hi].tolist()))

    def shape_of(self, gid: int) -> TreeShape:
        built: dict[int, TreeShape] = {0: leaf()}
        stack = [gid]
        left, right = self.left, self.right
        while stack:
            g = stack[-1]
            if g in built:
                stack.pop()
                continue
            la, rb = left[g], right[g]
            ta = built.get(la)
            tb = built.get(rb)
            if ta is not None and tb is not None:
                built[g] = join(ta, tb)
                stack.pop()
            else:
                if tb is None:
                    stack.append(rb)
                if ta is None:
                    stack.append(la)
        return built[gid]


def scan_min_universal(k: int, *, budget: int | None = None,
                       max_size: int | None = None,
                       log: CacheLog | None = None,
                       on_level: Callable[[LevelStats], None] | None = None) -> ScanOutcome:
    """Ascending exhaustive scan; stops at the first size with a witness.

    ``budget`` caps the total number of shapes scanned; a level is only
    entered if it fits, so partial levels never occur and results stay
    deterministic.  With ``max_size`` the scan gives up past that size.
    Either early stop yields ``exhaustive=False`` with no witnesses.
    """
    if k < 4:
        raise ValueError("the scan core handles k >= 4; smaller k are degenerate")
    scan = _Scan(k)
    explored = 1  # the leaf
    m = 1
    while True:
        m += 1
        if max_size is not None and m > max_size:
            return ScanOutcome(k, None, (), explored, False)
        count = wedderburn(m)
        if budget is not None and explored + count > budget:
            return ScanOutcome(k, None, (), explored, False)
        t0 = time.perf_counter()
        gids = scan.build_level(m)
        explored += count
        if on_level is not None:
            on_level(LevelStats(m, count, scan.level_fingerprints(m),
                                len(gids), time.perf_counter() - t0))
        if m >= k and log is not None:
            verdict = "none" if not gids else f"witnesses={len(gids)}"
            log.record(k, m, count, verdict)
        if gids:
            shapes = tuple(sorted((scan.shape_of(g) for g in gids), key=lambda t: t.code))
            return ScanOutcome(k, m, shapes, explored, True)
