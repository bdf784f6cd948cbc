"""Command-line benchmark driver."""

from __future__ import annotations

import argparse
import sys

from .bench import (
    BenchConfig,
    ConfigError,
    DEFAULT_ELEM_BYTES,
    DEFAULT_SPLITS,
    DEFAULT_THREADS,
    METHODS,
    ValidationFailure,
    median_quality_study,
    run_grid,
    speedup_table,
    write_quality_csv,
    write_records_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2


def parse_count(token: str) -> int:
    """A count written either plainly ("1024") or as a power of two ("2^10")."""
    token = token.strip()
    if "^" in token:
        base, _, exp = token.partition("^")
        if base.strip() != "2":
            raise ConfigError(f"only powers of two are supported, got {token!r}")
        return 2 ** int(exp)
    return int(token)


def parse_sizes(text: str) -> tuple[int, ...]:
    """Comma-separated sizes; "a..b" expands by doubling from a up to b."""
    sizes: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            lo_s, _, hi_s = token.partition("..")
            lo, hi = parse_count(lo_s), parse_count(hi_s)
            if lo < 1 or hi < lo:
                raise ConfigError(f"bad size range {token!r}")
            s = lo
            while s <= hi:
                sizes.append(s)
                s *= 2
        else:
            sizes.append(parse_count(token))
    if not sizes:
        raise ConfigError("no sizes given")
    return tuple(sizes)


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(parse_count(t) for t in text.split(",") if t.strip())


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def parse_methods(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def effective_threads(requested: tuple[int, ...]) -> tuple[int, ...]:
    """Round worker counts down to powers of two, deduplicated in order."""
    out: list[int] = []
    for t in requested:
        if t < 1:
            raise ConfigError(f"thread count must be >= 1, got {t}")
        eff = 1 << (t.bit_length() - 1)
        if eff != t:
            print(f"note: rounding threads {t} down to {eff}", file=sys.stderr)
        if eff not in out:
            out.append(eff)
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="parmerge-bench",
        description="Benchmark in-place merge strategies over a size/width/split grid.",
    )
    p.add_argument("--sizes", default="2^2..2^14",
                   help="total record counts; list and/or doubling ranges, e.g. '2^2..2^22' or '100,2^10'")
    p.add_argument("--elem-bytes", default=",".join(str(b) for b in DEFAULT_ELEM_BYTES),
                   help="record widths in bytes (>= 4); first 4 bytes are the ordering key")
    p.add_argument("--splits", default=",".join(f"{s}" for s in DEFAULT_SPLITS),
                   help="run boundary positions as fractions in (0,1)")
    p.add_argument("--methods", default=",".join(METHODS),
                   help=f"subset of {','.join(METHODS)}")
    p.add_argument("--threads", default=",".join(str(t) for t in DEFAULT_THREADS),
                   help="worker counts for the parallel methods (rounded down to powers of two)")
    p.add_argument("--reps", type=int, default=50, help="timed repetitions per cell")
    p.add_argument("--seed", type=int, default=1, help="input generator seed")
    p.add_argument("--out", default="results.csv", help="output CSV path")
    p.add_argument("--max-bytes", type=int, default=2**31,
                   help="skip cells whose array exceeds this many bytes (0 disables the cap)")
    p.add_argument("--study", choices=["median-quality"],
                   help="run the named study instead of the timing grid")
    p.add_argument("--speedup-baseline", metavar="METHOD",
                   help="also print a speedup table against this method")
    p.add_argument("--validate-only", action="store_true",
                   help="run each cell once, verify the result, and write nothing")
    return p


def config_from_args(args) -> BenchConfig:
    return BenchConfig(
        sizes=parse_sizes(args.sizes),
        elem_bytes=parse_int_list(args.elem_bytes),
        splits=parse_float_list(args.splits),
        methods=parse_methods(args.methods),
        threads=effective_threads(parse_int_list(args.threads)),
        reps=args.reps,
        seed=args.seed,
        out=args.out,
        max_bytes=args.max_bytes or None,
    ).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.study == "median-quality":
            rows = median_quality_study(config)
            write_quality_csv(config.out, rows)
            print(f"wrote {len(rows)} study rows to {config.out}")
            return EXIT_OK
        if args.validate_only:
            count = 0

            def tick(cell):
                nonlocal count
                count += 1

            run_grid(config, validate_only=True, progress=tick)
            print(f"validated {count} cells")
            return EXIT_OK
        records = run_grid(config)
        write_records_csv(config.out, records)
        print(f"wrote {len(records)} records to {config.out}")
        if args.speedup_baseline:
            for row in speedup_table(records, args.speedup_baseline):
                print(
                    f"speedup {row.method} t={row.threads} elem_bytes={row.elem_bytes} "
                    f"size={row.size}: {row.speedup:.3f}"
                )
        return EXIT_OK
    except ValidationFailure as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
