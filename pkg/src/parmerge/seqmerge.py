"""Sequential merge cores: rotation-based (O(1) space) and buffered (min-side scratch)."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .records import KeyedArray, MergeJob, check_job
from .shift import CIRCULAR, LINEAR, check_shift_kind

# opt-in expensive precondition checks (sorted-run scans before every merge)
_verify_preconditions = False


def set_debug_checks(enabled: bool) -> bool:
    """Toggle sorted-run precondition scans on the merge cores; returns the old value."""
    global _verify_preconditions
    old = _verify_preconditions
    _verify_preconditions = bool(enabled)
    return old


class MergeScratch:
    """Reusable buffer for the buffered merge core (grows on demand)."""

    def __init__(self):
        self.keys = np.empty(0, dtype=np.int32)
        self.payload = np.empty((0, 0), dtype=np.uint8)

    def reserve(self, n: int, width: int):
        if self.keys.shape[0] < n or self.payload.shape[1] != width:
            self.keys = np.empty(max(n, self.keys.shape[0]), dtype=np.int32)
            self.payload = np.empty((self.keys.shape[0], width), dtype=np.uint8)
        return self.keys, self.payload


def seq_merge_rotation(
    arr: KeyedArray, job: MergeJob, shift_kind: str = LINEAR
) -> None:
    """Merge two adjacent sorted runs in place with O(1) auxiliary space.

    Skips the left-run prefix already in position, rotates the right-run block
    that belongs before the left remainder, and iterates on the residue.
    ``shift_kind`` picks the rotation used for each exchange.
    """
    check_job(arr, job)
    check_shift_kind(shift_kind)
    if _verify_preconditions:
        job.check_runs(arr)
    _kernels.rotation_merge(
        arr.keys, arr.payload, job.start, job.middle, job.end, shift_kind == CIRCULAR
    )


def seq_merge_buffered(
    arr: KeyedArray, job: MergeJob, scratch: MergeScratch | None = None
) -> None:
    """Merge two adjacent sorted runs using an external buffer of min(|A|,|B|) records.

    With ``scratch=None`` the buffer is allocated here, inside whatever the
    caller is timing; pass a ``MergeScratch`` to reuse one across calls.
    """
    check_job(arr, job)
    if _verify_preconditions:
        job.check_runs(arr)
    need = min(job.len_a, job.len_b)
    width = arr.payload.shape[1]
    if scratch is None:
        buf_keys = np.empty(need, dtype=np.int32)
        buf_pay = np.empty((need, width), dtype=np.uint8)
    else:
        buf_keys, buf_pay = scratch.reserve(need, width)
    _kernels.buffered_merge(
        arr.keys, arr.payload, job.start, job.middle, job.end, buf_keys, buf_pay
    )
