"""Shared worker pool for the fork-join merge strategies."""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor

_lock = threading.Lock()
_pool: ThreadPoolExecutor | None = None
_pool_size = 0


def get_pool(min_workers: int = 1) -> ThreadPoolExecutor:
    """Return the process-wide pool, growing it if a caller needs more workers.

    A merge with t workers keeps at most t-1 tasks pending or blocked in a
    join at once, so a pool of at least t threads can never deadlock on its
    own subtree. Strategies join everything they spawned before returning,
    which makes replacing an undersized pool between calls safe.
    """
    global _pool, _pool_size
    with _lock:
        if _pool is None or _pool_size < min_workers:
            size = max(min_workers, 32, 2 * (os.cpu_count() or 1))
            old = _pool
            _pool = ThreadPoolExecutor(max_workers=size, thread_name_prefix="parmerge")
            _pool_size = size
            if old is not None:
                old.shutdown(wait=False)
        return _pool
