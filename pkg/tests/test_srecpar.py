import numpy as np
import pytest

from parmerge import (
    CIRCULAR,
    KeyedArray,
    LINEAR,
    MergeJob,
    RecParConfig,
    division_trace,
    merge_srecpar,
    plan_intervals,
    seq_merge_rotation,
)
from support import random_instance, record_multiset


class CountingPool:
    """Executor facade that counts submissions and runs them inline."""

    def __init__(self):
        self.submitted = 0

    def submit(self, fn, *args, **kwargs):
        self.submitted += 1
        from concurrent.futures import Future

        fut = Future()
        try:
            fut.set_result(fn(*args, **kwargs))
        except BaseException as exc:  # pragma: no cover
            fut.set_exception(exc)
        return fut


def test_single_worker_equals_leaf_core():
    rng = np.random.default_rng(5001)
    for _ in range(60):
        size = int(rng.integers(0, 400))
        arr, job = random_instance(rng, size, rng.random(), 80, elem_bytes=8)
        other = arr.copy()
        merge_srecpar(arr, job, 1)
        seq_merge_rotation(other, job)
        assert arr.equals(other)


def test_frozen_eight_record_example():
    arr = KeyedArray.from_keys([1, 3, 5, 7, 2, 4, 6, 8])
    job = MergeJob(0, 4, 8)
    trace = division_trace(arr, job, 2, size_limit=2)
    assert len(trace.records) == 1
    assert trace.records[0].pivots == (2, 2)
    # center exchange of A1=[5,7] with B0=[2,4]
    assert trace.divided.keys.tolist() == [1, 3, 2, 4, 5, 7, 6, 8]
    assert trace.leaf_jobs == [MergeJob(0, 2, 4), MergeJob(4, 6, 8)]
    merge_srecpar(arr, job, 2, size_limit=2)
    assert arr.keys.tolist() == [1, 2, 3, 4, 5, 6, 7, 8]


def test_no_division_below_size_limit():
    arr = KeyedArray.from_keys([5, 6, 1, 2])
    job = MergeJob(0, 2, 4)
    trace = division_trace(arr, job, 8, size_limit=16)
    assert trace.records == []
    assert trace.leaf_jobs == [job]
    merge_srecpar(arr, job, 8, size_limit=16)
    assert arr.is_sorted()


def test_shift_variants_produce_identical_arrays():
    rng = np.random.default_rng(5002)
    for _ in range(80):
        size = int(rng.integers(0, 1500))
        arr, job = random_instance(rng, size, rng.random(), int(rng.choice([10, 10**5])))
        other = arr.copy()
        t = int(rng.choice([2, 4, 8]))
        merge_srecpar(arr, job, t, shift_kind=LINEAR, size_limit=2)
        merge_srecpar(other, job, t, shift_kind=CIRCULAR, size_limit=2)
        assert np.array_equal(arr.keys, other.keys)
        assert arr.is_sorted()


def test_division_layout_matches_plan():
    rng = np.random.default_rng(5003)
    for _ in range(60):
        size = int(rng.integers(32, 2000))
        arr, job = random_instance(rng, size, rng.random(), 10**6, elem_bytes=8)
        t = int(rng.choice([2, 4, 8, 16]))
        plan = plan_intervals(arr, job, t)
        gathered_keys = np.concatenate(
            [arr.keys[s : s + n] for s, n in plan.leaf_sources]
        )
        gathered_pay = np.concatenate(
            [arr.payload[s : s + n] for s, n in plan.leaf_sources]
        )
        trace = division_trace(arr, job, t, size_limit=2)
        assert np.array_equal(trace.divided.keys[job.start : job.end], gathered_keys)
        assert np.array_equal(
            trace.divided.payload[job.start : job.end], gathered_pay
        )
        if len(trace.records) == t - 1:  # full division: boundaries agree too
            assert trace.leaf_jobs == plan.final_positions


def test_trace_counts():
    arr, middle = _generated(4096)
    job = MergeJob(0, middle, len(arr))
    assert len(division_trace(arr, job, 2, size_limit=2)) == 1
    trace = division_trace(arr, job, 8, size_limit=2)
    assert len(trace) == 7
    assert sorted({r.level for r in trace}) == [0, 1, 2]
    for level in (0, 1, 2):
        assert sorted(r.split_index for r in trace if r.level == level) == list(
            range(2**level)
        )


def _generated(size):
    from parmerge import generate_input

    return generate_input(size, 0.5, 77)


def test_trace_does_not_mutate_input():
    arr, middle = _generated(512)
    before = arr.copy()
    division_trace(arr, MergeJob(0, middle, len(arr)), 8, size_limit=2)
    assert arr.equals(before)


def test_spawn_count_bounded():
    rng = np.random.default_rng(5004)
    for t in (2, 4, 8, 16):
        arr, job = random_instance(rng, 3000, 0.5, 10**6)
        trace = division_trace(arr, job, t, size_limit=2)
        pool = CountingPool()
        merge_srecpar(arr, job, t, size_limit=2, pool=pool)
        assert arr.is_sorted()
        # one task per division, never more than t - 1 of them
        assert pool.submitted == len(trace.records)
        assert pool.submitted <= t - 1


def test_spawned_spans_disjoint():
    arr, middle = _generated(2048)
    trace = division_trace(arr, MergeJob(0, middle, len(arr)), 16, size_limit=2)
    # leaf jobs tile the range without overlap
    pos = 0
    for leaf in trace.leaf_jobs:
        assert leaf.start == pos
        pos = leaf.end
    assert pos == len(arr)


def test_leaf_merges_stay_inside_their_ranges():
    rng = np.random.default_rng(5005)
    inner, inner_job = random_instance(rng, 600, 0.5, 10**6, elem_bytes=8)
    keys = np.concatenate([[-77, -77], inner.keys, [-66, -66]]).astype(np.int32)
    pay = np.concatenate(
        [np.full((2, 4), 1, np.uint8), inner.payload, np.full((2, 4), 2, np.uint8)]
    )
    arr = KeyedArray(keys, pay)
    job = MergeJob(2, inner_job.middle + 2, inner_job.end + 2)
    merge_srecpar(arr, job, 8, size_limit=2)
    assert arr.keys[:2].tolist() == [-77, -77]
    assert arr.keys[-2:].tolist() == [-66, -66]
    assert np.all(arr.payload[:2] == 1) and np.all(arr.payload[-2:] == 2)
    assert arr.is_sorted(job.start, job.end)


def test_randomized_all_worker_counts():
    rng = np.random.default_rng(5006)
    for _ in range(120):
        size = int(rng.integers(0, 1 << 11))
        split = float(rng.choice([0.25, 0.5, 0.75, rng.random()]))
        kind = LINEAR if rng.random() < 0.5 else CIRCULAR
        arr, job = random_instance(
            rng, size, split, int(rng.choice([6, 300, 10**6])), elem_bytes=8
        )
        t = int(rng.choice([1, 2, 4, 8, 16]))
        before = record_multiset(arr)
        merge_srecpar(arr, job, t, shift_kind=kind)
        assert arr.is_sorted()
        assert record_multiset(arr) == before


def test_config_validation():
    with pytest.raises(ValueError):
        RecParConfig(-1)
    with pytest.raises(ValueError):
        RecParConfig(2, size_limit=1)
    with pytest.raises(ValueError):
        RecParConfig(2, shift_kind="diagonal")
    arr = KeyedArray.from_keys([2, 1])
    with pytest.raises(ValueError):
        merge_srecpar(arr, MergeJob(0, 1, 2), 3)
