"""Fixed-width keyed records stored as numpy arrays."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KEY_DTYPE = np.dtype(np.int32)
KEY_BYTES = 4
KEY_MIN = int(np.iinfo(np.int32).min)
KEY_MAX = int(np.iinfo(np.int32).max)


class KeyedArray:
    """Array of fixed-width records: a 4-byte signed ordering key plus opaque payload bytes.

    Keys and payload are kept in two parallel C-contiguous arrays so compiled
    kernels can move a record by copying one key and one payload row. A record
    is ``elem_bytes = 4 + payload_width`` bytes wide; ordering looks at the key
    only, payload bytes travel with it untouched.
    """

    __slots__ = ("keys", "payload")

    def __init__(self, keys, payload=None):
        keys = np.ascontiguousarray(keys, dtype=KEY_DTYPE)
        if keys.ndim != 1:
            raise ValueError("keys must be one-dimensional")
        if payload is None:
            payload = np.empty((keys.shape[0], 0), dtype=np.uint8)
        payload = np.ascontiguousarray(payload, dtype=np.uint8)
        if payload.ndim != 2 or payload.shape[0] != keys.shape[0]:
            raise ValueError("payload must have shape (len(keys), width)")
        self.keys = keys
        self.payload = payload

    @classmethod
    def from_keys(cls, keys, elem_bytes: int = KEY_BYTES) -> "KeyedArray":
        """Build an array from plain keys with zero-filled payload padding."""
        keys = np.asarray(keys, dtype=KEY_DTYPE)
        pad = _payload_width(elem_bytes)
        return cls(keys, np.zeros((keys.shape[0], pad), dtype=np.uint8))

    @classmethod
    def empty(cls, n: int, elem_bytes: int = KEY_BYTES) -> "KeyedArray":
        pad = _payload_width(elem_bytes)
        return cls(np.empty(n, dtype=KEY_DTYPE), np.empty((n, pad), dtype=np.uint8))

    @property
    def elem_bytes(self) -> int:
        return KEY_BYTES + self.payload.shape[1]

    def __len__(self) -> int:
        return self.keys.shape[0]

    def view(self, start: int, end: int) -> "KeyedArray":
        """Zero-copy subrange view; mutations are visible in the parent."""
        if not 0 <= start <= end <= len(self):
            raise IndexError(f"view [{start}, {end}) out of range for length {len(self)}")
        return KeyedArray(self.keys[start:end], self.payload[start:end])

    def copy(self) -> "KeyedArray":
        return KeyedArray(self.keys.copy(), self.payload.copy())

    def equals(self, other: "KeyedArray") -> bool:
        return np.array_equal(self.keys, other.keys) and np.array_equal(
            self.payload, other.payload
        )

    def records(self) -> list[tuple[int, bytes]]:
        """Materialize (key, payload bytes) tuples; intended for small arrays."""
        return [
            (int(self.keys[i]), self.payload[i].tobytes()) for i in range(len(self))
        ]

    def is_sorted(self, start: int = 0, end: int | None = None) -> bool:
        end = len(self) if end is None else end
        k = self.keys[start:end]
        return bool(np.all(k[1:] >= k[:-1]))

    def __repr__(self) -> str:
        return f"KeyedArray(n={len(self)}, elem_bytes={self.elem_bytes})"


def _payload_width(elem_bytes: int) -> int:
    if elem_bytes < KEY_BYTES:
        raise ValueError(f"elem_bytes must be >= {KEY_BYTES}, got {elem_bytes}")
    return elem_bytes - KEY_BYTES


@dataclass(frozen=True)
class MergeJob:
    """A region holding two adjacent sorted runs: [start, middle) and [middle, end)."""

    start: int
    middle: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.middle <= self.end:
            raise ValueError(f"need 0 <= start <= middle <= end, got {self}")

    @property
    def size(self) -> int:
        return self.end - self.start

    @property
    def len_a(self) -> int:
        return self.middle - self.start

    @property
    def len_b(self) -> int:
        return self.end - self.middle

    def check_runs(self, arr: KeyedArray) -> None:
        """Assert both runs are non-decreasing (debug/validation helper)."""
        if not arr.is_sorted(self.start, self.middle):
            raise ValueError(f"left run of {self} is not sorted")
        if not arr.is_sorted(self.middle, self.end):
            raise ValueError(f"right run of {self} is not sorted")


def check_job(arr: KeyedArray, job: MergeJob) -> None:
    """Bounds check a job against an array (cheap, used by public entry points)."""
    if job.end > len(arr):
        raise IndexError(f"{job} exceeds array length {len(arr)}")
