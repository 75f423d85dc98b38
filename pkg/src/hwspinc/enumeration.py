"""Exhaustive generation of HW-matrices of a given odd degree.

The search space is the off-diagonal entries, one bit each ({2, 3} per
position), filled row by row with the last row forced by the zero
column-sum condition.  Rows are carried as packed bit-plane ints
(``lo | hi << n``) so a row-set sum is one XOR; the J-map nonemptiness
condition is checked incrementally on every row set inside the filled
prefix, in decreasing order of rejection power.  For the completed
matrix, row sets touching the forced row are complements of already
checked ones (the total row sum is zero), so the only condition the
forced row adds is that its diagonal entry comes out as 1 -- and that is
literally the full-prefix row-set check, no special-casing needed.

``raw`` mode enumerates every HW-matrix this way.  ``canonical`` mode
cuts the space first: every equivalence class contains a matrix whose
first row is ``1 2 2 ...`` and whose (1, 0) entry is 2 (conjugate the
columns that show a 3), so only such matrices are searched, with a
further sound symmetry cut on row weights.  Found matrices are grouped
into classes by orbit stamping: the first matrix of a new class has its
whole normalized orbit inserted into a seen-set, so later orbit members
are skipped with one lookup and nothing is ever canonicalized twice.
Exact raw counts come for free, since each class meets the normalized
set in exactly ``|orbit| / 2^n`` matrices.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .action import canonical_form
from .smatrix import SMatrix

__all__ = [
    "EnumerationResult",
    "HWCount",
    "enumerate_hw",
    "classify_hw",
    "count_hw",
]

# Degrees above this need an explicit opt-in; the raw space at n = 9 is
# 2^56 off-diagonal bits and has never been run to completion here.
DEFAULT_MAX_DEGREE = 7


def _check_degree(n: int, allow_large: bool) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"HW-matrices exist only for odd degree >= 3, got {n}")
    if n > DEFAULT_MAX_DEGREE and not allow_large:
        raise ValueError(
            f"degree {n} exceeds the practical bound {DEFAULT_MAX_DEGREE}; "
            "pass allow_large=True (or --allow-large) for a long run"
        )


def _row_candidates(n: int, r: int) -> list[int]:
    """Packed planes of every distinguished-shaped row ``r``, ascending."""
    full = (1 << n) - 1
    base = ((full ^ (1 << r)) << n) | (1 << r)
    out = []
    low_mask = (1 << r) - 1
    for c in range(1 << (n - 1)):
        spread = (c & low_mask) | ((c >> r) << (r + 1))
        out.append(base | spread)
    return out


def _check_order(level: int, n: int) -> list[int]:
    """Prefix row sets ordered by how often they reject a random row.

    A row set of odd size s fails with probability about 2^-s, an even
    one with about 2^-(n-s); checking the sharp filters first makes the
    doomed candidates cheap.
    """
    def strength(u: int) -> int:
        s = u.bit_count() + 1
        return s if s & 1 else n - s

    return sorted(range(1, 1 << level), key=lambda u: (strength(u), u))


def _packed_to_rows(packed: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(((p >> j) & 1) | (((p >> (n + j)) & 1) << 1) for j in range(n))
        for p in packed
    )


def _dfs(
    n: int,
    prefix: list[int],
    folds: list[int],
    cands: dict[int, list[int]],
    counts: dict[int, list[int]],
    orders: dict[int, list[int]],
    min_weight: int,
) -> Iterator[tuple[int, ...]]:
    """Yield packed completed matrices extending ``prefix``.

    ``folds[u]`` is the plane-XOR of the prefix rows in the set ``u``.
    ``min_weight`` carries the symmetry cut (-1 disables it).
    """
    full = (1 << n) - 1
    level = len(prefix)
    last_free = n - 2
    order = orders[level]
    row_counts = counts[level]
    leaf = level == last_free
    for ci, cand in enumerate(cands[level]):
        if min_weight >= 0 and row_counts[ci] < min_weight:
            continue
        ok = True
        for u in order:
            t = folds[u] ^ cand
            if not ((t & full) & ~(t >> n)):
                ok = False
                break
        if not ok:
            continue
        if leaf:
            forced = folds[-1] ^ cand
            yield tuple(prefix) + (cand, forced)
            continue
        new_folds = folds + [f ^ cand for f in folds]
        prefix.append(cand)
        next_min = min_weight
        if min_weight == 0 and level == 1:
            next_min = row_counts[ci]
        yield from _dfs(n, prefix, new_folds, cands, counts, orders, next_min)
        prefix.pop()


def _search(
    n: int,
    normalized: bool,
    symmetry_cut: bool,
    threads: int = 1,
) -> Iterator[tuple[int, ...]]:
    """All completed matrices as packed plane tuples, in DFS order.

    ``normalized`` fixes row 0 to ``1 2 2 ...`` and entry (1, 0) to 2.
    ``symmetry_cut`` additionally requires row 1 to minimize the number
    of 3-entries outside column 0 (achievable inside every class by a
    relabeling that fixes index 0), checked incrementally.
    """
    full = (1 << n) - 1
    first_free = 1 if normalized else 0
    cands: dict[int, list[int]] = {}
    counts: dict[int, list[int]] = {}
    orders: dict[int, list[int]] = {}
    for r in range(first_free, n - 1):
        lst = _row_candidates(n, r)
        if normalized and r == 1:
            lst = [p for p in lst if not p & 1]  # entry (1, 0) = 2
        cands[r] = lst
        weight_mask = (full & ~1) & ~(1 << r)
        counts[r] = [(p & weight_mask).bit_count() for p in lst]
        orders[r] = _check_order(r, n)

    base_folds = [0]
    prefix: list[int] = []
    if normalized:
        row0 = ((full ^ 1) << n) | 1
        prefix = [row0]
        base_folds = [0, row0]
    min_weight = 0 if (symmetry_cut and normalized) else -1

    if threads <= 1 or n <= 3:
        yield from _dfs(n, prefix, base_folds, cands, counts, orders, min_weight)
        return

    # Contiguous shards of the first free row keep the output order equal
    # to the sequential one for any worker count.
    first = cands[first_free]
    first_counts = counts[first_free]
    bounds = [len(first) * k // threads for k in range(threads + 1)]

    def run_shard(k: int) -> list[tuple[int, ...]]:
        shard_c = dict(cands)
        shard_w = dict(counts)
        shard_c[first_free] = first[bounds[k] : bounds[k + 1]]
        shard_w[first_free] = first_counts[bounds[k] : bounds[k + 1]]
        return list(
            _dfs(n, list(prefix), list(base_folds), shard_c, shard_w, orders, min_weight)
        )

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for chunk in pool.map(run_shard, range(threads)):
            yield from chunk


def _normalized_orbit(
    rows: tuple[tuple[int, ...], ...]
) -> set[tuple[tuple[int, ...], ...]]:
    """All matrices in the orbit of ``rows`` with the normalized shape.

    Relabels by every permutation, then applies the unique column flips
    restoring row 0 to all-2 and entry (1, 0) to 2.  Conjugation swaps
    2 and 3 and fixes everything else, so a flip is an XOR with 1 on the
    {2, 3} entries.
    """
    n = len(rows)
    out = set()
    for p in itertools.permutations(range(n)):
        img = [[rows[p[i]][p[j]] for j in range(n)] for i in range(n)]
        top = img[0]
        flips = [img[1][0] == 3] + [top[j] == 3 for j in range(1, n)]
        out.add(
            tuple(
                tuple(v ^ 1 if flips[j] and v >= 2 else v for j, v in enumerate(row))
                for row in img
            )
        )
    return out


@dataclass(frozen=True)
class EnumerationResult:
    """Classified HW-matrices of one degree."""

    n: int
    representatives: tuple[SMatrix, ...]  # canonical forms, sorted
    orbit_sizes: tuple[int, ...]  # aligned with representatives
    raw_count: int

    @property
    def class_count(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class HWCount:
    raw: int
    classes: int


def classify_hw(n: int, threads: int = 1, allow_large: bool = False) -> EnumerationResult:
    """One canonical representative per equivalence class, with counts.

    The result is a pure function of ``n`` (worker count changes nothing)
    and is memoized, matrices being immutable.
    """
    _check_degree(n, allow_large)
    if threads <= 1:
        return _classify_cached(n)
    return _classify(n, threads)


@lru_cache(maxsize=8)
def _classify_cached(n: int) -> EnumerationResult:
    return _classify(n, threads=1)


def _classify(n: int, threads: int) -> EnumerationResult:
    seen: set[tuple[tuple[int, ...], ...]] = set()
    found: list[tuple[SMatrix, int]] = []
    for packed in _search(n, normalized=True, symmetry_cut=True, threads=threads):
        rows = _packed_to_rows(packed, n)
        if rows in seen:
            continue
        stamp = _normalized_orbit(rows)
        seen |= stamp
        found.append((canonical_form(SMatrix(rows)), len(stamp) << n))
    found.sort(key=lambda pair: pair[0].entries)
    reps = tuple(m for m, _ in found)
    sizes = tuple(s for _, s in found)
    return EnumerationResult(n, reps, sizes, sum(sizes))


def enumerate_hw(
    n: int,
    mode: str = "canonical",
    threads: int = 1,
    allow_large: bool = False,
) -> Iterator[SMatrix]:
    """Stream HW-matrices of degree ``n``.

    ``raw`` yields every HW-matrix in a fixed search order; ``canonical``
    yields exactly one representative per equivalence class, sorted.
    """
    _check_degree(n, allow_large)
    if mode == "raw":
        for packed in _search(n, normalized=False, symmetry_cut=False, threads=threads):
            yield SMatrix(_packed_to_rows(packed, n))
    elif mode == "canonical":
        yield from classify_hw(n, threads=threads, allow_large=allow_large).representatives
    else:
        raise ValueError(f"unknown mode: {mode!r}")


def count_hw(n: int, threads: int = 1, allow_large: bool = False) -> HWCount:
    """(raw count, class count) without materializing the raw set."""
    result = classify_hw(n, threads=threads, allow_large=allow_large)
    return HWCount(raw=result.raw_count, classes=result.class_count)
