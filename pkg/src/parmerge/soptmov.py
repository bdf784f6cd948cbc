"""Plan-first parallel merge: find every split up front, move each record once, merge leaves concurrently."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._pool import get_pool
from .median import PivotPair, find_median
from .records import KEY_MAX, KeyedArray, MergeJob, check_job
from .seqmerge import seq_merge_rotation
from .shift import LINEAR, check_shift_kind


class MarkerOverflow(Exception):
    """The key range leaves no headroom to mark moved records in place."""


@dataclass(frozen=True)
class RunPair:
    """One split node: a slice of run A and a slice of run B, in original coordinates.

    Past the first division the two slices are no longer adjacent, so a pair
    of ranges is kept instead of a single (start, middle, end) triple.
    """

    a_start: int
    a_end: int
    b_start: int
    b_end: int

    @property
    def len_a(self) -> int:
        return self.a_end - self.a_start

    @property
    def len_b(self) -> int:
        return self.b_end - self.b_start

    @property
    def size(self) -> int:
        return self.len_a + self.len_b


@dataclass
class IntervalPlan:
    """Complete division plan for one merge job split across ``threads`` workers.

    ``levels[d]`` holds the 2**d run pairs of division level d (level 0 is the
    input job). ``leaf_sources`` lists the 2t source slices (start, length) in
    final layout order A0 B0 A1 B1 ...; ``final_positions`` gives the t
    destination jobs the leaf merges will run on.
    """

    job: MergeJob
    threads: int
    levels: list[list[RunPair]]
    leaf_sources: list[tuple[int, int]] = field(default_factory=list)
    final_positions: list[MergeJob] = field(default_factory=list)


@dataclass(frozen=True)
class MarkerCodec:
    """Reversible in-key "already moved" flag for keys in [min_key, max_key].

    ``offset = 1 + max_key - min_key`` pushes any in-range key strictly above
    ``max_key``, so a marked key is recognizable and recoverable; construction
    fails when ``max_key + offset`` would not fit the key type.
    """

    min_key: int
    max_key: int
    offset: int

    def mark(self, key: int) -> int:
        return key + self.offset

    def unmark(self, key: int) -> int:
        return key - self.offset

    def is_marked(self, key: int) -> bool:
        return key > self.max_key


def check_threads(threads: int) -> int:
    if threads < 1 or threads & (threads - 1):
        raise ValueError(f"worker count must be a power of two >= 1, got {threads}")
    return threads


def plan_intervals(arr: KeyedArray, job: MergeJob, threads: int, *, median=find_median) -> IntervalPlan:
    """Divide a job into ``threads`` balanced run pairs without moving any record.

    Runs the pivot search once per internal node (threads - 1 calls in total)
    and derives the final layout every leaf merge will see.
    """
    check_threads(threads)
    check_job(arr, job)
    keys = arr.keys
    levels = [[RunPair(job.start, job.middle, job.middle, job.end)]]
    for _ in range(threads.bit_length() - 1):
        nxt = []
        for pair in levels[-1]:
            piv: PivotPair = median(
                keys[pair.a_start : pair.a_end], keys[pair.b_start : pair.b_end]
            )
            cut_a = pair.a_start + piv.p_a
            cut_b = pair.b_start + piv.p_b
            nxt.append(RunPair(pair.a_start, cut_a, pair.b_start, cut_b))
            nxt.append(RunPair(cut_a, pair.a_end, cut_b, pair.b_end))
        levels.append(nxt)
    plan = IntervalPlan(job, threads, levels)
    dst = job.start
    for pair in levels[-1]:
        plan.leaf_sources.append((pair.a_start, pair.len_a))
        plan.leaf_sources.append((pair.b_start, pair.len_b))
        plan.final_positions.append(
            MergeJob(dst, dst + pair.len_a, dst + pair.size)
        )
        dst += pair.size
    return plan


def derive_marker(arr: KeyedArray, start: int = 0, end: int | None = None) -> MarkerCodec:
    """Scan a non-empty key range and build its marker codec.

    Raises :class:`MarkerOverflow` when the range spans too much of the key
    type to leave marking headroom.
    """
    end = len(arr) if end is None else end
    if end <= start:
        raise ValueError("marker derivation needs a non-empty range")
    span = arr.keys[start:end]
    min_key = int(span.min())
    max_key = int(span.max())
    offset = 1 + max_key - min_key
    if max_key + offset > KEY_MAX:
        raise MarkerOverflow(
            f"keys span [{min_key}, {max_key}]; no headroom to mark in a 4-byte key"
        )
    return MarkerCodec(min_key, max_key, offset)


def reorder_multi(arr: KeyedArray, plan: IntervalPlan, codec: MarkerCodec) -> list[MergeJob]:
    """Permute records into the planned leaf layout, each moved at most once.

    Finds a record's destination by binary search over the plan's source
    slices and walks move cycles, marking records placed ahead of the
    left-to-right scan. All marks are removed by the time it returns.
    """
    positions, _ = reorder_multi_with_stats(arr, plan, codec)
    return positions


def reorder_multi_with_stats(
    arr: KeyedArray, plan: IntervalPlan, codec: MarkerCodec
) -> tuple[list[MergeJob], int]:
    """Like :func:`reorder_multi` but also reports how many records were displaced."""
    src_starts, dst_starts = _slice_tables(plan)
    moved = _kernels.reorder_cycles(
        arr.keys,
        arr.payload,
        plan.job.start,
        plan.job.end,
        src_starts,
        dst_starts,
        codec.offset,
        codec.max_key,
    )
    return list(plan.final_positions), int(moved)


def _slice_tables(plan: IntervalPlan) -> tuple[np.ndarray, np.ndarray]:
    # source-sorted views of the leaf slices: all A slices ascend, then all B
    # slices ascend; empty slices sharing a start sit before the non-empty one.
    dst = plan.job.start
    dests = []
    for _, length in plan.leaf_sources:
        dests.append(dst)
        dst += length
    a_entries = [
        (plan.leaf_sources[i][0], dests[i]) for i in range(0, len(plan.leaf_sources), 2)
    ]
    b_entries = [
        (plan.leaf_sources[i][0], dests[i]) for i in range(1, len(plan.leaf_sources), 2)
    ]
    entries = a_entries + b_entries
    src_starts = np.array([e[0] for e in entries], dtype=np.int64)
    dst_starts = np.array([e[1] for e in entries], dtype=np.int64)
    return src_starts, dst_starts


def merge_soptmov(
    arr: KeyedArray,
    job: MergeJob,
    threads: int,
    *,
    shift_kind: str = LINEAR,
    size_limit: int | None = None,
    strict_marker: bool = False,
    leaf_core=None,
    pool=None,
) -> None:
    """Merge two adjacent sorted runs with the plan-first parallel strategy.

    Plans all splits, permutes records straight to their pre-merge slots, then
    merges the t leaf pairs concurrently. Needs marker headroom in the key
    range; without it the call transparently falls back to the recursive
    strategy (or raises when ``strict_marker`` is set). O(threads) extra space.
    """
    from .srecpar import merge_srecpar  # local import, module cycle otherwise

    check_threads(threads)
    check_job(arr, job)
    check_shift_kind(shift_kind)
    keys = arr.keys
    s, m, e = job.start, job.middle, job.end
    if m == s or m == e or keys[m - 1] <= keys[m]:
        return
    leaf = leaf_core or (lambda a, j: seq_merge_rotation(a, j, shift_kind))
    if threads == 1:
        leaf(arr, job)
        return
    plan = plan_intervals(arr, job, threads)
    try:
        codec = derive_marker(arr, s, e)
    except MarkerOverflow:
        if strict_marker:
            raise
        kwargs = {} if size_limit is None else {"size_limit": size_limit}
        merge_srecpar(arr, job, threads, shift_kind=shift_kind, pool=pool, **kwargs)
        return
    positions = reorder_multi(arr, plan, codec)
    pool = pool if pool is not None else get_pool(threads)
    futures = [pool.submit(leaf, arr, leaf_job) for leaf_job in positions[1:]]
    leaf(arr, positions[0])
    for f in futures:
        f.result()
