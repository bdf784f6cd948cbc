"""Benchmark harness: input generation, timing grid, derived tables, CSV persistence."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field, replace

import numpy as np

from ._pool import get_pool
from .median import find_median, find_median_optimal
from .records import KeyedArray, MergeJob
from .seqmerge import seq_merge_buffered, seq_merge_rotation
from .shift import CIRCULAR, LINEAR
from .soptmov import merge_soptmov
from .srecpar import merge_srecpar

METHODS = ("seq-rotation", "seq-buffered", "soptmov", "srecpar-ls", "srecpar-cs")
SEQ_METHODS = ("seq-rotation", "seq-buffered")
DEFAULT_SIZES = tuple(2**k for k in range(2, 15))
DEFAULT_ELEM_BYTES = (4, 64, 512, 1024, 16384, 65540)
DEFAULT_SPLITS = (0.25, 0.5, 0.75)
DEFAULT_THREADS = (8, 16)
QUALITY_THREADS = (2, 4, 8, 16)

RECORD_HEADER = "method,threads,elem_bytes,size,split,mean_ns,min_ns,max_ns"
QUALITY_HEADER = "t,size,rel_diff_findmedian"


class ValidationFailure(Exception):
    """A merge under measurement produced an unsorted or altered key multiset."""


class ConfigError(Exception):
    """The benchmark configuration is inconsistent."""


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark campaign: the measurement grid plus run controls."""

    sizes: tuple[int, ...] = DEFAULT_SIZES
    elem_bytes: tuple[int, ...] = DEFAULT_ELEM_BYTES
    splits: tuple[float, ...] = DEFAULT_SPLITS
    methods: tuple[str, ...] = METHODS
    threads: tuple[int, ...] = DEFAULT_THREADS
    reps: int = 50
    seed: int = 1
    out: str | None = None
    max_bytes: int | None = 2**31

    def validate(self) -> "BenchConfig":
        if any(s < 0 for s in self.sizes):
            raise ConfigError("sizes must be >= 0")
        if any(eb < 4 for eb in self.elem_bytes):
            raise ConfigError("elem_bytes must be >= 4")
        if any(not 0.0 < sp < 1.0 for sp in self.splits):
            raise ConfigError("splits must lie in the open interval (0, 1)")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown methods {unknown}; choose from {METHODS}")
        if any(t < 1 or t & (t - 1) for t in self.threads):
            raise ConfigError("thread counts must be powers of two >= 1")
        # splits are persisted with 2 decimals; quantize so records round-trip
        splits = tuple(round(sp, 2) for sp in self.splits)
        if any(not 0.0 < sp < 1.0 for sp in splits):
            raise ConfigError("splits must stay inside (0, 1) at 2-decimal precision")
        if len(set(splits)) != len(splits):
            raise ConfigError("splits collide after 2-decimal rounding")
        return replace(self, splits=splits)


@dataclass(frozen=True)
class BenchRecord:
    """One measured grid cell (durations in nanoseconds, aggregated over reps)."""

    method: str
    threads: int
    elem_bytes: int
    size: int
    split: float
    mean_ns: float
    min_ns: float
    max_ns: float

    def __post_init__(self):
        if not self.min_ns <= self.mean_ns <= self.max_ns:
            raise ValueError("need min_ns <= mean_ns <= max_ns")


@dataclass(frozen=True)
class SpeedupRow:
    method: str
    threads: int
    elem_bytes: int
    size: int
    speedup: float


@dataclass(frozen=True)
class QualityRow:
    t: int
    size: int
    rel_diff: float


def generate_input(
    size: int, split: float, seed: int, elem_bytes: int = 4
) -> tuple[KeyedArray, int]:
    """Build two adjacent sorted runs of ``size`` records total.

    Each run is an independent random walk: value[0] = 0 and each step adds a
    uniform draw from [0, 5), truncated to the integer key. ``middle`` is
    round(size * split). Payload padding is filled from the same seed, so a
    given (size, split, seed, elem_bytes) always yields the same array.
    """
    if size < 0:
        raise ValueError("size must be >= 0")
    rng = np.random.default_rng(seed)
    middle = int(size * split + 0.5)
    middle = min(middle, size)
    keys = np.empty(size, dtype=np.int32)
    _fill_run(keys, 0, middle, rng)
    _fill_run(keys, middle, size, rng)
    pad = elem_bytes - 4
    if pad < 0:
        raise ValueError("elem_bytes must be >= 4")
    if pad:
        payload = rng.integers(0, 256, size=(size, pad), dtype=np.uint8)
    else:
        payload = None
    return KeyedArray(keys, payload), middle


def _fill_run(keys, start, end, rng):
    n = end - start
    if n == 0:
        return
    walk = np.empty(n, dtype=np.float64)
    walk[0] = 0.0
    if n > 1:
        np.cumsum(rng.random(n - 1) * 5.0, out=walk[1:])
    keys[start:end] = walk.astype(np.int32)


def _run_method(name: str, arr: KeyedArray, job: MergeJob, threads: int, pool) -> None:
    if name == "seq-rotation":
        seq_merge_rotation(arr, job)
    elif name == "seq-buffered":
        seq_merge_buffered(arr, job)  # buffer allocation stays inside the timed call
    elif name == "soptmov":
        merge_soptmov(arr, job, threads, pool=pool)
    elif name == "srecpar-ls":
        merge_srecpar(arr, job, threads, shift_kind=LINEAR, pool=pool)
    elif name == "srecpar-cs":
        merge_srecpar(arr, job, threads, shift_kind=CIRCULAR, pool=pool)
    else:  # pragma: no cover - config validation rejects this earlier
        raise ConfigError(f"unknown method {name!r}")


def threads_for(method: str, config: BenchConfig) -> tuple[int, ...]:
    return (1,) if method in SEQ_METHODS else config.threads


def iter_cells(config: BenchConfig):
    """Grid cells in deterministic emission order, honoring the memory cap."""
    for method in config.methods:
        for t in threads_for(method, config):
            for eb in config.elem_bytes:
                for size in config.sizes:
                    if config.max_bytes is not None and size * eb > config.max_bytes:
                        continue
                    for split in config.splits:
                        yield method, t, eb, size, split


def run_grid(config: BenchConfig, *, validate_only: bool = False, progress=None) -> list[BenchRecord]:
    """Measure every grid cell: regenerate, merge, verify, aggregate.

    The input is regenerated from the cell's seed for every repetition (the
    merge destroys it); only the merge call is timed. A warm-up repetition is
    run and discarded per cell. Any unsorted or multiset-changing result
    raises :class:`ValidationFailure` naming the cell.
    """
    config = config.validate()
    pool = get_pool(max(config.threads, default=1))
    records = []
    for method, t, eb, size, split in iter_cells(config):
        cell = f"{method} t={t} elem_bytes={eb} size={size} split={split:.2f}"
        reps = 1 if validate_only else config.reps
        times = []
        expected = None
        for rep in range(reps + 1):
            arr, middle = generate_input(size, split, config.seed, eb)
            job = MergeJob(0, middle, size)
            if expected is None:
                expected = np.sort(arr.keys)
            t0 = time.perf_counter_ns()
            _run_method(method, arr, job, t, pool)
            elapsed = time.perf_counter_ns() - t0
            if not np.array_equal(arr.keys, expected):
                raise ValidationFailure(f"unsorted or corrupted output in cell [{cell}]")
            if rep > 0:
                times.append(elapsed)
            if validate_only:
                break
        if progress is not None:
            progress(cell)
        if validate_only:
            continue
        records.append(
            BenchRecord(
                method, t, eb, size, split,
                mean_ns=float(np.mean(times)),
                min_ns=float(min(times)),
                max_ns=float(max(times)),
            )
        )
    return records


def speedup_table(records: list[BenchRecord], baseline_method: str) -> list[SpeedupRow]:
    """Per-cell speedups against a baseline method, averaged over the split positions.

    The baseline must cover every (elem_bytes, size, split) cell present in
    ``records``; a per-split ratio baseline_mean / method_mean is computed and
    the split axis is then averaged away.
    """
    base = {}
    for r in records:
        if r.method == baseline_method:
            base[(r.elem_bytes, r.size, r.split)] = r.mean_ns
    if not base:
        raise ConfigError(f"baseline method {baseline_method!r} has no records")
    grouped: dict[tuple[str, int, int, int], list[float]] = {}
    order: list[tuple[str, int, int, int]] = []
    for r in records:
        cell = (r.elem_bytes, r.size, r.split)
        if cell not in base:
            raise ConfigError(
                f"baseline {baseline_method!r} missing cell elem_bytes={r.elem_bytes} "
                f"size={r.size} split={r.split:.2f}"
            )
        key = (r.method, r.threads, r.elem_bytes, r.size)
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(base[cell] / r.mean_ns)
    return [
        SpeedupRow(m, t, eb, size, float(np.mean(grouped[(m, t, eb, size)])))
        for (m, t, eb, size) in order
    ]


def median_quality_study(config: BenchConfig) -> list[QualityRow]:
    """Compare the largest leaf pair produced by the pivot heuristic vs. the optimal search.

    For each (t, size): both searches recursively divide the same generated
    input into t pairs; the reported value is
    (max_heuristic - max_optimal) / max_optimal, averaged over the configured
    split positions. Positive means the heuristic's worst leaf is larger.
    """
    config = config.validate()
    rows = []
    for t in QUALITY_THREADS:
        for size in config.sizes:
            diffs = []
            for split in config.splits:
                arr, middle = generate_input(size, split, config.seed)
                max_heur = largest_leaf_pair(arr.keys, middle, t, find_median)
                max_opt = largest_leaf_pair(arr.keys, middle, t, find_median_optimal)
                if max_opt == 0:
                    diffs.append(0.0)
                else:
                    diffs.append((max_heur - max_opt) / max_opt)
            rows.append(QualityRow(t, size, float(np.mean(diffs))))
    return rows


def largest_leaf_pair(keys, middle: int, t: int, median_fn) -> int:
    """Size of the largest of the t leaf pairs after recursive division with ``median_fn``."""
    if t < 1 or t & (t - 1):
        raise ConfigError("t must be a power of two >= 1")
    pairs = [(keys[:middle], keys[middle:])]
    for _ in range(t.bit_length() - 1):
        nxt = []
        for a, b in pairs:
            piv = median_fn(a, b)
            nxt.append((a[: piv.p_a], b[: piv.p_b]))
            nxt.append((a[piv.p_a :], b[piv.p_b :]))
        pairs = nxt
    return max(len(a) + len(b) for a, b in pairs)


def write_records_csv(path, records: list[BenchRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_HEADER.split(","))
        for r in records:
            writer.writerow(
                [
                    r.method,
                    r.threads,
                    r.elem_bytes,
                    r.size,
                    f"{r.split:.2f}",
                    repr(r.mean_ns),
                    repr(r.min_ns),
                    repr(r.max_ns),
                ]
            )


def read_records_csv(path) -> list[BenchRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != RECORD_HEADER.split(","):
            raise ConfigError(f"unexpected CSV header {header}")
        for row in reader:
            records.append(
                BenchRecord(
                    method=row[0],
                    threads=int(row[1]),
                    elem_bytes=int(row[2]),
                    size=int(row[3]),
                    split=float(row[4]),
                    mean_ns=float(row[5]),
                    min_ns=float(row[6]),
                    max_ns=float(row[7]),
                )
            )
    return records


def write_quality_csv(path, rows: list[QualityRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(QUALITY_HEADER.split(","))
        for r in rows:
            writer.writerow([r.t, r.size, repr(r.rel_diff)])
