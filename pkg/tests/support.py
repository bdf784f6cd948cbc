"""Shared helpers for the test suite."""

import numpy as np

from parmerge import KeyedArray, MergeJob


def sorted_run(rng, n, domain):
    return np.sort(rng.integers(0, domain, n)).astype(np.int32)


def random_instance(rng, size, split, domain, elem_bytes=4):
    """A KeyedArray holding two adjacent sorted runs plus its MergeJob."""
    middle = int(size * split)
    keys = np.concatenate(
        [sorted_run(rng, middle, domain), sorted_run(rng, size - middle, domain)]
    )
    pad = elem_bytes - 4
    payload = rng.integers(0, 256, (size, pad), dtype=np.uint8) if pad else None
    return KeyedArray(keys, payload), MergeJob(0, middle, size)


def record_multiset(arr):
    """Sorted (key, payload bytes) tuples; order-independent content signature."""
    return sorted(
        (int(arr.keys[i]), arr.payload[i].tobytes()) for i in range(len(arr))
    )
