"""In-place exchange of two adjacent blocks: linear (contiguous) and circular (minimal moves)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .records import KeyedArray

LINEAR = "linear"
CIRCULAR = "circular"
SHIFT_KINDS = (LINEAR, CIRCULAR)


def check_shift_kind(kind: str) -> str:
    if kind not in SHIFT_KINDS:
        raise ValueError(f"shift kind must be one of {SHIFT_KINDS}, got {kind!r}")
    return kind


@dataclass
class ShiftStats:
    """Operation counts from an instrumented shift.

    ``swaps`` counts record-pair swap operations, ``writes`` counts records
    written to their final slot, ``cycles`` counts move cycles (circular
    shifting only; always 0 for linear).
    """

    swaps: int = 0
    writes: int = 0
    cycles: int = 0


def linear_shift(arr: KeyedArray, len_a: int, len_b: int) -> None:
    """Turn A|B into B|A with contiguous sweeps; at most 2*(len_a+len_b) swaps."""
    _check_lengths(arr, len_a, len_b)
    _kernels.linear_shift(arr.keys, arr.payload, 0, len_a, len_b)


def circular_shift(arr: KeyedArray, len_a: int, len_b: int) -> None:
    """Turn A|B into B|A following gcd(len_a, len_b) move cycles, one spare record."""
    _check_lengths(arr, len_a, len_b)
    _kernels.circular_shift(arr.keys, arr.payload, 0, len_a, len_b)


def shift_region(arr: KeyedArray, start: int, len_a: int, len_b: int, kind: str) -> None:
    """Apply either shift to the region [start, start+len_a+len_b) of ``arr``."""
    if kind == CIRCULAR:
        _kernels.circular_shift(arr.keys, arr.payload, start, len_a, len_b)
    else:
        _kernels.linear_shift(arr.keys, arr.payload, start, len_a, len_b)


def linear_shift_instrumented(arr: KeyedArray, len_a: int, len_b: int) -> ShiftStats:
    """Pure-Python linear shift that counts swaps; used to validate bounds."""
    _check_lengths(arr, len_a, len_b)
    stats = ShiftStats()
    lo, la, lb = 0, len_a, len_b
    hi = la + lb
    while la > 0 and lb > 0:
        if la <= lb:
            # left block is smaller: sweep forward into the final tail slots
            base = hi - la
            for i in range(la):
                _swap(arr, lo + i, base + i)
                stats.swaps += 1
                stats.writes += 2
            hi -= la
            lb -= la
        else:
            # right block is smaller: sweep backward into the final head slots
            base = lo + la
            for i in range(lb - 1, -1, -1):
                _swap(arr, lo + i, base + i)
                stats.swaps += 1
                stats.writes += 2
            lo += lb
            la -= lb
    return stats


def circular_shift_instrumented(arr: KeyedArray, len_a: int, len_b: int) -> ShiftStats:
    """Pure-Python circular shift counting cycles, swaps, and final-slot writes."""
    _check_lengths(arr, len_a, len_b)
    stats = ShiftStats()
    if len_a == 0 or len_b == 0:
        return stats
    keys, payload = arr.keys, arr.payload
    g = math.gcd(len_a, len_b)
    for c in range(g):
        tk = int(keys[c])
        tp = payload[c].copy()
        j = _dest(c, len_a, len_b)
        while j != c:
            keys[j], tk = tk, int(keys[j])
            tp_old = payload[j].copy()
            payload[j] = tp
            tp = tp_old
            stats.swaps += 1
            stats.writes += 1
            j = _dest(j, len_a, len_b)
        keys[c] = tk
        payload[c] = tp
        stats.writes += 1
        stats.cycles += 1
    return stats


def circular_cycles(len_a: int, len_b: int) -> list[list[int]]:
    """Index orbits the circular shift follows, in execution order.

    Each orbit starts at its leader (0, 1, ..., gcd-1) and lists the
    destination indexes in the order records are placed.
    """
    if len_a < 0 or len_b < 0:
        raise ValueError("lengths must be non-negative")
    if len_a == 0 or len_b == 0:
        return []
    cycles = []
    for c in range(math.gcd(len_a, len_b)):
        orbit = [c]
        j = _dest(c, len_a, len_b)
        while j != c:
            orbit.append(j)
            j = _dest(j, len_a, len_b)
        cycles.append(orbit)
    return cycles


def rotate_oracle(arr: KeyedArray, len_a: int) -> KeyedArray:
    """Ground truth for both shifts: B then A, built by plain copying."""
    if not 0 <= len_a <= len(arr):
        raise ValueError(f"len_a {len_a} out of range for length {len(arr)}")
    keys = np.concatenate([arr.keys[len_a:], arr.keys[:len_a]])
    payload = np.concatenate([arr.payload[len_a:], arr.payload[:len_a]])
    return KeyedArray(keys, payload)


def _dest(i: int, len_a: int, len_b: int) -> int:
    # records of A move right by len_b, records of B move left by len_a
    return i + len_b if i < len_a else i - len_a


def _swap(arr: KeyedArray, i: int, j: int) -> None:
    keys, payload = arr.keys, arr.payload
    keys[i], keys[j] = keys[j], keys[i]
    tmp = payload[i].copy()
    payload[i] = payload[j]
    payload[j] = tmp


def _check_lengths(arr: KeyedArray, len_a: int, len_b: int) -> None:
    if len_a < 0 or len_b < 0:
        raise ValueError("lengths must be non-negative")
    if len_a + len_b != len(arr):
        raise ValueError(
            f"len_a + len_b = {len_a + len_b} does not cover the array (length {len(arr)})"
        )
