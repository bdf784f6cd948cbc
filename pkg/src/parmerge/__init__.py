"""Parallel in-place merging of two adjacent sorted runs with O(threads) extra space.

The library splits the runs into balanced pairs with a double binary search,
rearranges them with linear or circular block shifts, and merges the pairs
concurrently; a benchmark harness measures the strategies over a
size/width/split grid.
"""

from .bench import (
    BenchConfig,
    BenchRecord,
    ConfigError,
    QualityRow,
    SpeedupRow,
    ValidationFailure,
    generate_input,
    median_quality_study,
    read_records_csv,
    run_grid,
    speedup_table,
    write_quality_csv,
    write_records_csv,
)
from .median import PivotPair, find_median, find_median_optimal, pivot_invariants_hold
from .records import KEY_MAX, KEY_MIN, KeyedArray, MergeJob
from .seqmerge import MergeScratch, seq_merge_buffered, seq_merge_rotation, set_debug_checks
from .shift import (
    CIRCULAR,
    LINEAR,
    ShiftStats,
    circular_cycles,
    circular_shift,
    circular_shift_instrumented,
    linear_shift,
    linear_shift_instrumented,
    rotate_oracle,
)
from .soptmov import (
    IntervalPlan,
    MarkerCodec,
    MarkerOverflow,
    RunPair,
    derive_marker,
    merge_soptmov,
    plan_intervals,
    reorder_multi,
    reorder_multi_with_stats,
)
from .srecpar import (
    DivisionRecord,
    DivisionTrace,
    RecParConfig,
    division_trace,
    merge_srecpar,
)

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "CIRCULAR",
    "ConfigError",
    "DivisionRecord",
    "DivisionTrace",
    "IntervalPlan",
    "KEY_MAX",
    "KEY_MIN",
    "KeyedArray",
    "LINEAR",
    "MarkerCodec",
    "MarkerOverflow",
    "MergeJob",
    "MergeScratch",
    "PivotPair",
    "QualityRow",
    "RecParConfig",
    "RunPair",
    "ShiftStats",
    "SpeedupRow",
    "ValidationFailure",
    "circular_cycles",
    "circular_shift",
    "circular_shift_instrumented",
    "derive_marker",
    "division_trace",
    "find_median",
    "find_median_optimal",
    "generate_input",
    "linear_shift",
    "linear_shift_instrumented",
    "median_quality_study",
    "merge_soptmov",
    "merge_srecpar",
    "pivot_invariants_hold",
    "plan_intervals",
    "read_records_csv",
    "reorder_multi",
    "reorder_multi_with_stats",
    "rotate_oracle",
    "run_grid",
    "seq_merge_buffered",
    "seq_merge_rotation",
    "set_debug_checks",
    "speedup_table",
    "write_quality_csv",
    "write_records_csv",
]
