"""Recursive parallel merge: split, shift the center, hand the right half to a task, recurse left."""

from __future__ import annotations

from dataclasses import dataclass

from ._pool import get_pool
from .median import PivotPair, find_median
from .records import KeyedArray, MergeJob, check_job
from .seqmerge import seq_merge_rotation
from .shift import LINEAR, check_shift_kind, shift_region
from .soptmov import check_threads

DEFAULT_SIZE_LIMIT = 512


@dataclass(frozen=True)
class RecParConfig:
    """Division controls: recursion depth log2(threads), a stop size, and the shift variant."""

    depth_limit: int
    size_limit: int = DEFAULT_SIZE_LIMIT
    shift_kind: str = LINEAR

    def __post_init__(self):
        if self.depth_limit < 0:
            raise ValueError("depth_limit must be >= 0")
        if self.size_limit < 2:
            raise ValueError("size_limit must be >= 2")
        check_shift_kind(self.shift_kind)


def merge_srecpar(
    arr: KeyedArray,
    job: MergeJob,
    threads: int,
    *,
    shift_kind: str = LINEAR,
    size_limit: int = DEFAULT_SIZE_LIMIT,
    leaf_core=None,
    pool=None,
) -> None:
    """Merge two adjacent sorted runs with the recursive parallel strategy.

    Each division finds the pivots, shifts the two center blocks so the pair
    becomes two adjacent pairs, spawns one task for the right pair, and keeps
    dividing the left one. Leaves merge with ``leaf_core`` (rotation merge by
    default) and every spawned task is joined before returning. Ranges at or
    below ``size_limit`` stop dividing early.
    """
    check_threads(threads)
    check_job(arr, job)
    cfg = RecParConfig(threads.bit_length() - 1, size_limit, shift_kind)
    keys = arr.keys
    s, m, e = job.start, job.middle, job.end
    if m == s or m == e or keys[m - 1] <= keys[m]:
        return
    leaf = leaf_core or (lambda a, j: seq_merge_rotation(a, j, shift_kind))
    pool = pool if pool is not None else (get_pool(threads) if cfg.depth_limit else None)
    _core(arr, s, m, e, 0, cfg, leaf, pool)


def _core(arr, start, middle, end, level, cfg, leaf, pool):
    if start == middle or middle == end:
        return
    keys = arr.keys
    futures = []
    while level != cfg.depth_limit and (end - start) > cfg.size_limit:
        piv = find_median(keys[start:middle], keys[middle:end])
        rest_a = (middle - start) - piv.p_a
        # exchange center blocks: A1 (rest_a records) with B0 (p_b records)
        shift_region(arr, start + piv.p_a, rest_a, piv.p_b, cfg.shift_kind)
        right_start = start + piv.p_a + piv.p_b
        futures.append(
            pool.submit(
                _core, arr, right_start, right_start + rest_a, end, level + 1, cfg, leaf, pool
            )
        )
        end = right_start
        middle = start + piv.p_a
        level += 1
    leaf(arr, MergeJob(start, middle, end))
    for f in futures:
        f.result()


@dataclass(frozen=True)
class DivisionRecord:
    """One division event: where in the tree, which pivots, and what got shifted."""

    level: int
    split_index: int
    pivots: PivotPair
    shift_start: int
    shift_len_a: int
    shift_len_b: int


@dataclass
class DivisionTrace:
    """Single-worker replay of the division phase (no leaf merges, caller's array untouched)."""

    records: list[DivisionRecord]
    leaf_jobs: list[MergeJob]
    divided: KeyedArray

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def division_trace(
    arr: KeyedArray,
    job: MergeJob,
    threads: int,
    *,
    shift_kind: str = LINEAR,
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> DivisionTrace:
    """Replay the recursive division deterministically on a private copy.

    Records every pivot search and shifted span; ``leaf_jobs`` are the pairs a
    real merge would hand to the leaf cores, left to right.
    """
    check_threads(threads)
    check_job(arr, job)
    cfg = RecParConfig(threads.bit_length() - 1, size_limit, shift_kind)
    work = arr.copy()
    records: list[DivisionRecord] = []
    leaves: list[MergeJob] = []
    keys = work.keys
    s, m, e = job.start, job.middle, job.end
    if m == s or m == e or keys[m - 1] <= keys[m]:
        leaves.append(job)
        return DivisionTrace(records, leaves, work)

    def run(start, middle, end, level, index):
        if start == middle or middle == end:
            leaves.append(MergeJob(start, middle, end))
            return
        rights = []
        while level != cfg.depth_limit and (end - start) > cfg.size_limit:
            piv = find_median(keys[start:middle], keys[middle:end])
            rest_a = (middle - start) - piv.p_a
            records.append(
                DivisionRecord(level, index, piv, start + piv.p_a, rest_a, piv.p_b)
            )
            shift_region(work, start + piv.p_a, rest_a, piv.p_b, cfg.shift_kind)
            right_start = start + piv.p_a + piv.p_b
            rights.append((right_start, right_start + rest_a, end, level + 1, 2 * index + 1))
            end = right_start
            middle = start + piv.p_a
            level += 1
            index *= 2
        leaves.append(MergeJob(start, middle, end))
        for r in rights:
            run(*r)

    run(s, m, e, 0, 0)
    leaves.sort(key=lambda j: j.start)
    return DivisionTrace(records, leaves, work)
