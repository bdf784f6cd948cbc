#!/usr/bin/env python3
"""Render benchmark CSVs as charts: execution time, speedup, or median quality.

Reads the benchmark harness output (method,threads,elem_bytes,size,split,
mean_ns,min_ns,max_ns) or the median-quality study output
(t,size,rel_diff_findmedian) and writes one figure per invocation. Time and
speedup charts carry vertical markers where the working set of the chosen
record width crosses each CPU cache capacity.

Usage:
    plot.py --csv results.csv --kind speedup --elem-bytes 4 --out fig.png \
            --caches 32768,1048576,28835840
"""

from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

TIME_HEADER = ["method", "threads", "elem_bytes", "size", "split",
               "mean_ns", "min_ns", "max_ns"]
QUALITY_HEADER = ["t", "size", "rel_diff_findmedian"]
KINDS = ("time", "speedup", "median-quality")
DEFAULT_CACHES = (32768, 1048576, 28835840)  # L1 / L2 / L3 bytes
DEFAULT_BASELINE = "seq-rotation"

EXIT_OK = 0
EXIT_DATA = 1
EXIT_CONFIG = 2


class CsvFormatError(Exception):
    def __init__(self, row, message):
        super().__init__(f"row {row}: {message}")
        self.row = row


def read_time_csv(path):
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TIME_HEADER:
            raise CsvFormatError(1, f"expected header {','.join(TIME_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(TIME_HEADER):
                raise CsvFormatError(lineno, f"expected {len(TIME_HEADER)} fields")
            try:
                rows.append(
                    {
                        "method": row[0],
                        "threads": int(row[1]),
                        "elem_bytes": int(row[2]),
                        "size": int(row[3]),
                        "split": float(row[4]),
                        "mean_ns": float(row[5]),
                    }
                )
            except ValueError as exc:
                raise CsvFormatError(lineno, str(exc)) from exc
    return rows


def read_quality_csv(path):
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != QUALITY_HEADER:
            raise CsvFormatError(1, f"expected header {','.join(QUALITY_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(QUALITY_HEADER):
                raise CsvFormatError(lineno, f"expected {len(QUALITY_HEADER)} fields")
            try:
                rows.append(
                    {"t": int(row[0]), "size": int(row[1]), "rel_diff": float(row[2])}
                )
            except ValueError as exc:
                raise CsvFormatError(lineno, str(exc)) from exc
    return rows


def cache_positions(caches, elem_bytes):
    """Cache capacities expressed in records of the given width."""
    return [c / elem_bytes for c in caches]


def _mean_over_splits(rows, elem_bytes):
    """(method, threads) -> sorted [(size, mean over split positions)]."""
    acc = {}
    for r in rows:
        if r["elem_bytes"] != elem_bytes:
            continue
        acc.setdefault((r["method"], r["threads"]), {}).setdefault(
            r["size"], []
        ).append(r["mean_ns"])
    series = {}
    for key, by_size in acc.items():
        pts = sorted((size, sum(v) / len(v)) for size, v in by_size.items())
        series[key] = pts
    return series


def build_series(kind, rows, elem_bytes=None, baseline=DEFAULT_BASELINE):
    """Deterministic chart data: label -> ([x], [y]). Pure function of the rows."""
    if kind == "median-quality":
        series = {}
        for r in rows:
            series.setdefault(f"t={r['t']}", {})[r["size"]] = r["rel_diff"]
        return {
            label: tuple(zip(*sorted(points.items())))
            for label, points in sorted(series.items(), key=lambda kv: int(kv[0][2:]))
        }
    per_config = _mean_over_splits(rows, elem_bytes)
    if not per_config:
        raise CsvFormatError(2, f"no rows with elem_bytes={elem_bytes}")
    if kind == "time":
        return {
            _label(m, t): tuple(zip(*pts))
            for (m, t), pts in sorted(per_config.items())
        }
    # speedup: baseline mean / method mean at matching sizes
    base = {
        size: mean
        for (m, _t), pts in per_config.items()
        if m == baseline
        for size, mean in pts
    }
    if not base:
        raise CsvFormatError(2, f"baseline method {baseline!r} not present")
    out = {}
    for (m, t), pts in sorted(per_config.items()):
        xs, ys = [], []
        for size, mean in pts:
            if size in base:
                xs.append(size)
                ys.append(base[size] / mean)
        out[_label(m, t)] = (tuple(xs), tuple(ys))
    return out


def _label(method, threads):
    return method if threads == 1 else f"{method} t={threads}"


def render(kind, csv_path, out_path, elem_bytes=4, caches=DEFAULT_CACHES,
           baseline=DEFAULT_BASELINE):
    if kind == "median-quality":
        rows = read_quality_csv(csv_path)
        series = build_series(kind, rows)
    else:
        rows = read_time_csv(csv_path)
        series = build_series(kind, rows, elem_bytes, baseline)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    markers = ["s", "D", "|", "o", "x", "^", "v", "*"]
    for i, (label, (xs, ys)) in enumerate(series.items()):
        ax.plot(xs, ys, marker=markers[i % len(markers)], markersize=4,
                linewidth=1.1, label=label)
    ax.set_xscale("log")
    ax.set_xlabel("Size (records)")
    if kind == "time":
        ax.set_yscale("log")
        ax.set_ylabel("Mean time (ns)")
        ax.set_title(f"Execution time, {elem_bytes}-byte records")
    elif kind == "speedup":
        ax.set_ylabel(f"Speedup vs {baseline}")
        ax.set_title(f"Speedup, {elem_bytes}-byte records")
        ax.axhline(1.0, color="gray", linewidth=0.8, linestyle=":")
    else:
        ax.set_ylabel("(max heuristic - max optimal) / max optimal")
        ax.set_title("Pivot split quality: heuristic vs optimal")
    if kind in ("time", "speedup"):
        for pos, name in zip(cache_positions(caches, elem_bytes), ("L1", "L2", "L3")):
            ax.axvline(pos, color="black", linewidth=0.8, linestyle="--", alpha=0.6)
            ax.annotate(name, (pos, 1.0), xycoords=("data", "axes fraction"),
                        ha="right", va="top", fontsize=8, rotation=90)
    ax.grid(True, which="both", alpha=0.25)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def parse_caches(text):
    caches = tuple(int(t) for t in text.split(",") if t.strip())
    if not caches or any(c <= 0 for c in caches):
        raise ValueError("cache sizes must be positive integers")
    if list(caches) != sorted(set(caches)):
        raise ValueError("cache sizes must be strictly increasing")
    return caches


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="plot.py", description="Render benchmark CSVs as charts."
    )
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--elem-bytes", type=int, default=4,
                        help="record width to select (time/speedup charts)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--caches", default=",".join(str(c) for c in DEFAULT_CACHES),
                        help="cache capacities in bytes, ascending")
    parser.add_argument("--baseline", default=DEFAULT_BASELINE,
                        help="baseline method for speedup charts")
    args = parser.parse_args(argv)
    try:
        caches = parse_caches(args.caches)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        render(args.kind, args.csv, args.out, args.elem_bytes, caches, args.baseline)
    except CsvFormatError as exc:
        print(f"bad CSV {args.csv}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
