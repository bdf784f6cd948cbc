"""Pivot search that splits two adjacent sorted runs into independently mergeable halves."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple

import numpy as np


class PivotPair(NamedTuple):
    """Split offsets (p_a into run A, p_b into run B).

    A valid pair guarantees every element of A[:p_a] is <= every element of
    B[p_b:] and every element of B[:p_b] is <= every element of A[p_a:], so
    (A[:p_a], B[:p_b]) and (A[p_a:], B[p_b:]) merge independently.
    """

    p_a: int
    p_b: int


def find_median(a, b, *, key=None) -> PivotPair:
    """Double binary search for a balanced valid pivot pair.

    ``a`` and ``b`` are individually sorted sequences (anything indexable);
    ``key`` optionally extracts the ordering key from an element. Runs in
    O(log|a| + log|b|) comparisons. Disjoint-range inputs take a fast path
    that returns a split requiring no data movement at all.
    """
    la, lb = len(a), len(b)
    k = key if key is not None else _ident
    if la == 0 or lb == 0 or k(a[la - 1]) <= k(b[0]):
        return PivotPair(la, 0)
    if not k(a[0]) <= k(b[lb - 1]):
        return PivotPair(0, lb)

    left_a, limit_a = 0, la
    left_b, limit_b = 0, lb
    while left_a < limit_a and left_b < limit_b:
        p_a = (limit_a - left_a) // 2 + left_a
        p_b = (limit_b - left_b) // 2 + left_b
        va = k(a[p_a])
        vb = k(b[p_b])
        if va == vb:
            # equal pivots are valid on both sides; stop here
            break
        if va < vb:
            if p_a + p_b < (la - p_a) + (lb - p_b):
                left_a = p_a + 1
            else:
                limit_b = p_b
        else:
            if p_a + p_b < (la - p_a) + (lb - p_b):
                left_b = p_b + 1
            else:
                limit_a = p_a
    p_a = (limit_a - left_a) // 2 + left_a
    p_b = (limit_b - left_b) // 2 + left_b
    return PivotPair(p_a, p_b)


def find_median_optimal(a, b, *, key=None) -> PivotPair:
    """Exhaustive-quality pivot search: the valid pair with the best balance.

    Minimizes |(p_a + p_b) - (|a| + |b| - p_a - p_b)| over all valid pairs by
    trying every split of ``a`` and binary-searching the matching window in
    ``b`` (O(|a| log |b|)). Ties resolve to the smallest p_a, then smallest
    p_b, so results are reproducible.
    """
    if key is None and isinstance(a, np.ndarray) and isinstance(b, np.ndarray):
        return _optimal_arrays(a, b)
    return _optimal_generic(a, b, key)


def _ident(x):
    return x


def _optimal_arrays(a, b) -> PivotPair:
    la, lb = len(a), len(b)
    total = la + lb
    if la == 0:
        return PivotPair(0, _nearest(total // 2, 0, lb))
    # valid p_b range for each p_a: [lo, hi]
    lo = np.zeros(la + 1, dtype=np.int64)
    lo[1:] = np.searchsorted(b, a, side="left")
    hi = np.full(la + 1, lb, dtype=np.int64)
    hi[:la] = np.searchsorted(b, a, side="right")
    pa = np.arange(la + 1, dtype=np.int64)
    # integer p_b closest to (total/2 - p_a), clipped into the valid window
    floor_c = np.clip((total - 2 * pa) // 2, lo, hi)
    ceil_c = np.clip((total - 2 * pa + 1) // 2, lo, hi)
    bal_floor = np.abs(2 * (pa + floor_c) - total)
    bal_ceil = np.abs(2 * (pa + ceil_c) - total)
    take_ceil = bal_ceil < bal_floor
    pb = np.where(take_ceil, ceil_c, floor_c)
    bal = np.minimum(bal_floor, bal_ceil)
    i = int(np.argmin(bal))  # first minimum = smallest p_a
    return PivotPair(i, int(pb[i]))


def _optimal_generic(a, b, key) -> PivotPair:
    la, lb = len(a), len(b)
    total = la + lb
    k = key if key is not None else _ident
    best = None
    for p_a in range(la + 1):
        lo = 0 if p_a == 0 else bisect_left(b, k(a[p_a - 1]), key=k)
        hi = lb if p_a == la else bisect_right(b, k(a[p_a]), key=k)
        p_b = _nearest((total - 2 * p_a) // 2, lo, hi)
        bal = abs(2 * (p_a + p_b) - total)
        alt = _nearest((total - 2 * p_a + 1) // 2, lo, hi)
        if abs(2 * (p_a + alt) - total) < bal:
            p_b, bal = alt, abs(2 * (p_a + alt) - total)
        if best is None or bal < best[0]:
            best = (bal, p_a, p_b)
    assert best is not None
    return PivotPair(best[1], best[2])


def _nearest(target: int, lo: int, hi: int) -> int:
    return min(max(target, lo), hi)


def pivot_invariants_hold(a, b, pivots: PivotPair, *, key=None) -> bool:
    """Check the two cross inequalities a pivot pair must satisfy."""
    k = key if key is not None else _ident
    p_a, p_b = pivots
    if not (0 <= p_a <= len(a) and 0 <= p_b <= len(b)):
        return False
    if p_a > 0 and p_b < len(b) and k(a[p_a - 1]) > k(b[p_b]):
        return False
    if p_b > 0 and p_a < len(a) and k(b[p_b - 1]) > k(a[p_a]):
        return False
    return True
