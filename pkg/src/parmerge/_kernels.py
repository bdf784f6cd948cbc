"""Compiled inner loops (numba, GIL-released) shared by shifts, merges, and reordering.

Every kernel takes the full ``keys``/``payload`` arrays plus integer offsets,
so each compiles to a single signature and slices never lose contiguity.
Payload rows travel with their keys; the zero-width case gets dedicated loops
so the key-only path stays vectorizable.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_JIT = dict(nogil=True, cache=True)

# the one-pass exchange may stage this many records (constant space)
_SCRATCH_RECORDS = 256
_SCRATCH_MAX_WIDTH = 60


@njit(**_JIT)
def lower_bound(keys, lo, hi, value):
    """First index in [lo, hi) whose key is >= value."""
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(**_JIT)
def upper_bound(keys, lo, hi, value):
    """First index in [lo, hi) whose key is > value."""
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] <= value:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(**_JIT)
def _staged_exchange(keys, payload, lo, la, lb):
    # stage the small block in scratch, slide the big one contiguously over it
    w = payload.shape[1]
    if la <= lb:
        sk = np.empty(la, np.int32)
        sp = np.empty((la, w), np.uint8)
        for i in range(la):
            sk[i] = keys[lo + i]
            for c in range(w):
                sp[i, c] = payload[lo + i, c]
        if w == 0:
            for i in range(lb):
                keys[lo + i] = keys[lo + la + i]
        else:
            for i in range(lb):
                keys[lo + i] = keys[lo + la + i]
                for c in range(w):
                    payload[lo + i, c] = payload[lo + la + i, c]
        base = lo + lb
        for i in range(la):
            keys[base + i] = sk[i]
            for c in range(w):
                payload[base + i, c] = sp[i, c]
    else:
        sk = np.empty(lb, np.int32)
        sp = np.empty((lb, w), np.uint8)
        base = lo + la
        for i in range(lb):
            sk[i] = keys[base + i]
            for c in range(w):
                sp[i, c] = payload[base + i, c]
        if w == 0:
            for i in range(la - 1, -1, -1):
                keys[lo + lb + i] = keys[lo + i]
        else:
            for i in range(la - 1, -1, -1):
                keys[lo + lb + i] = keys[lo + i]
                for c in range(w):
                    payload[lo + lb + i, c] = payload[lo + i, c]
        for i in range(lb):
            keys[lo + i] = sk[i]
            for c in range(w):
                payload[lo + i, c] = sp[i, c]


@njit(**_JIT)
def linear_shift(keys, payload, lo, len_a, len_b):
    """Exchange adjacent blocks [lo, lo+len_a) and [lo+len_a, lo+len_a+len_b) in place.

    Contiguous sweeps only. A small block is staged in bounded scratch and the
    large one slides over it in one pass; otherwise the smaller block is
    swapped into its final position and the residue of the larger one remains.
    """
    w = payload.shape[1]
    la = len_a
    lb = len_b
    hi = lo + la + lb
    while la > 0 and lb > 0:
        if min(la, lb) <= _SCRATCH_RECORDS and w <= _SCRATCH_MAX_WIDTH:
            _staged_exchange(keys, payload, lo, la, lb)
            return
        if la <= lb:
            base = hi - la
            if w == 0:
                for i in range(la):
                    s = lo + i
                    d = base + i
                    tk = keys[s]
                    keys[s] = keys[d]
                    keys[d] = tk
            else:
                for i in range(la):
                    s = lo + i
                    d = base + i
                    tk = keys[s]
                    keys[s] = keys[d]
                    keys[d] = tk
                    for c in range(w):
                        tb = payload[s, c]
                        payload[s, c] = payload[d, c]
                        payload[d, c] = tb
            hi -= la
            lb -= la
        else:
            base = lo + la
            if w == 0:
                for i in range(lb - 1, -1, -1):
                    s = lo + i
                    d = base + i
                    tk = keys[s]
                    keys[s] = keys[d]
                    keys[d] = tk
            else:
                for i in range(lb - 1, -1, -1):
                    s = lo + i
                    d = base + i
                    tk = keys[s]
                    keys[s] = keys[d]
                    keys[d] = tk
                    for c in range(w):
                        tb = payload[s, c]
                        payload[s, c] = payload[d, c]
                        payload[d, c] = tb
            lo += lb
            la -= lb


@njit(**_JIT)
def circular_shift(keys, payload, lo, len_a, len_b):
    """Exchange adjacent blocks by following permutation cycles with one spare record.

    Runs gcd(len_a, len_b) cycles starting at offsets 0, 1, ..., gcd-1; each
    cycle writes (len_a+len_b)/gcd records straight to their final slots.
    """
    if len_a == 0 or len_b == 0:
        return
    w = payload.shape[1]
    g = len_a
    h = len_b
    while h:
        g, h = h, g % h
    if w == 0:
        for c in range(g):
            tk = keys[lo + c]
            j = c + len_b if c < len_a else c - len_a
            while j != c:
                p = lo + j
                sk = keys[p]
                keys[p] = tk
                tk = sk
                j = j + len_b if j < len_a else j - len_a
            keys[lo + c] = tk
        return
    tmp_pay = np.empty(w, np.uint8)
    for c in range(g):
        tk = keys[lo + c]
        for q in range(w):
            tmp_pay[q] = payload[lo + c, q]
        j = c + len_b if c < len_a else c - len_a
        while j != c:
            p = lo + j
            sk = keys[p]
            keys[p] = tk
            tk = sk
            for q in range(w):
                sb = payload[p, q]
                payload[p, q] = tmp_pay[q]
                tmp_pay[q] = sb
            j = j + len_b if j < len_a else j - len_a
        keys[lo + c] = tk
        for q in range(w):
            payload[lo + c, q] = tmp_pay[q]


@njit(**_JIT)
def rotation_merge(keys, payload, start, middle, end, circular):
    """Merge sorted runs [start, middle) and [middle, end) in place, O(1) extra space.

    Skips the left-run prefix already below the right run, exchanges the whole
    left remainder with the right-run block that belongs before it, and
    repeats on the residue. ``circular`` selects the exchange variant.
    """
    s = start
    m = middle
    e = end
    while s < m and m < e:
        # left-run records <= B[0] are already placed
        s = upper_bound(keys, s, m, keys[m])
        if s == m:
            break
        # right-run block strictly below the new A[0] goes in front of A
        k_end = lower_bound(keys, m, e, keys[s])
        if circular:
            circular_shift(keys, payload, s, m - s, k_end - m)
        else:
            linear_shift(keys, payload, s, m - s, k_end - m)
        s += k_end - m
        m = k_end


@njit(**_JIT)
def buffered_merge(keys, payload, start, middle, end, buf_keys, buf_pay):
    """Classic merge of [start, middle) and [middle, end) using a min-side buffer."""
    w = payload.shape[1]
    la = middle - start
    lb = end - middle
    if la == 0 or lb == 0:
        return
    if la <= lb:
        for i in range(la):
            buf_keys[i] = keys[start + i]
            for c in range(w):
                buf_pay[i, c] = payload[start + i, c]
        i = 0
        j = middle
        d = start
        if w == 0:
            while i < la and j < end:
                if keys[j] < buf_keys[i]:
                    keys[d] = keys[j]
                    j += 1
                else:
                    keys[d] = buf_keys[i]
                    i += 1
                d += 1
            while i < la:
                keys[d] = buf_keys[i]
                i += 1
                d += 1
        else:
            while i < la and j < end:
                if keys[j] < buf_keys[i]:
                    keys[d] = keys[j]
                    for c in range(w):
                        payload[d, c] = payload[j, c]
                    j += 1
                else:
                    keys[d] = buf_keys[i]
                    for c in range(w):
                        payload[d, c] = buf_pay[i, c]
                    i += 1
                d += 1
            while i < la:
                keys[d] = buf_keys[i]
                for c in range(w):
                    payload[d, c] = buf_pay[i, c]
                i += 1
                d += 1
    else:
        for i in range(lb):
            buf_keys[i] = keys[middle + i]
            for c in range(w):
                buf_pay[i, c] = payload[middle + i, c]
        i = lb - 1
        j = middle - 1
        d = end - 1
        if w == 0:
            while i >= 0 and j >= start:
                if buf_keys[i] >= keys[j]:
                    keys[d] = buf_keys[i]
                    i -= 1
                else:
                    keys[d] = keys[j]
                    j -= 1
                d -= 1
            while i >= 0:
                keys[d] = buf_keys[i]
                i -= 1
                d -= 1
        else:
            while i >= 0 and j >= start:
                if buf_keys[i] >= keys[j]:
                    keys[d] = buf_keys[i]
                    for c in range(w):
                        payload[d, c] = buf_pay[i, c]
                    i -= 1
                else:
                    keys[d] = keys[j]
                    for c in range(w):
                        payload[d, c] = payload[j, c]
                    j -= 1
                d -= 1
            while i >= 0:
                keys[d] = buf_keys[i]
                for c in range(w):
                    payload[d, c] = buf_pay[i, c]
                i -= 1
                d -= 1


@njit(**_JIT)
def reorder_cycles(keys, payload, start, end, src_starts, dst_starts, marker, max_key):
    """Permute records into the planned slice layout via marked move cycles.

    ``src_starts``/``dst_starts`` describe disjoint source slices (sorted by
    source start) and where each lands. A record placed early is marked by
    adding ``marker`` to its key; the left-to-right scan unmarks those slots
    and starts a fresh cycle at every slot still holding original content.
    Returns the number of records moved to a different slot.
    """
    w = payload.shape[1]
    tmp_pay = np.empty(w, np.uint8)
    nslices = src_starts.shape[0]
    moved = 0
    for i in range(start, end):
        if keys[i] > max_key:
            keys[i] -= marker
            continue
        d = _slice_dest(i, src_starts, dst_starts, nslices)
        if d == i:
            continue
        tk = keys[i]
        for c in range(w):
            tmp_pay[c] = payload[i, c]
        j = d
        while j != i:
            sk = keys[j]
            keys[j] = tk + marker
            tk = sk
            for c in range(w):
                sb = payload[j, c]
                payload[j, c] = tmp_pay[c]
                tmp_pay[c] = sb
            moved += 1
            j = _slice_dest(j, src_starts, dst_starts, nslices)
        keys[i] = tk  # cycle closes at its leader, already behind the scan
        for c in range(w):
            payload[i, c] = tmp_pay[c]
        moved += 1
    return moved


@njit(**_JIT)
def _slice_dest(idx, src_starts, dst_starts, nslices):
    lo = 0
    hi = nslices
    while lo < hi:
        mid = (lo + hi) >> 1
        if src_starts[mid] <= idx:
            lo = mid + 1
        else:
            hi = mid
    s = lo - 1
    return dst_starts[s] + (idx - src_starts[s])


def warmup() -> None:
    """Force-compile every kernel on tiny inputs (cached across processes)."""

    def runs():
        return np.array([2, 4, 1, 3], dtype=np.int32), np.zeros((4, 1), np.uint8)

    keys, pay = runs()
    linear_shift(keys, pay, 0, 2, 2)
    circular_shift(keys, pay, 0, 2, 2)
    keys, pay = runs()
    rotation_merge(keys, pay, 0, 2, 4, False)
    keys, pay = runs()
    rotation_merge(keys, pay, 0, 2, 4, True)
    keys, pay = runs()
    buffered_merge(
        keys, pay, 0, 2, 4, np.empty(2, np.int32), np.empty((2, 1), np.uint8)
    )
    keys, pay = runs()
    reorder_cycles(
        keys,
        pay,
        0,
        4,
        np.array([0, 2], dtype=np.int64),
        np.array([2, 0], dtype=np.int64),
        10,
        5,
    )
