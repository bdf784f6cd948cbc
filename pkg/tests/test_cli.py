import pytest

from parmerge import read_records_csv
from parmerge.bench import ConfigError
from parmerge.cli import (
    effective_threads,
    main,
    parse_count,
    parse_sizes,
)


def test_parse_count():
    assert parse_count("1024") == 1024
    assert parse_count("2^10") == 1024
    with pytest.raises(ConfigError):
        parse_count("3^2")


def test_parse_sizes_range_and_list():
    assert parse_sizes("2^2..2^5") == (4, 8, 16, 32)
    assert parse_sizes("7,2^3,100") == (7, 8, 100)
    assert parse_sizes("4..40") == (4, 8, 16, 32)
    with pytest.raises(ConfigError):
        parse_sizes("2^5..2^2")
    with pytest.raises(ConfigError):
        parse_sizes("")


def test_effective_threads_rounds_down(capsys):
    assert effective_threads((8, 16)) == (8, 16)
    assert effective_threads((6, 9, 2)) == (4, 8, 2)
    assert "rounding threads 6 down to 4" in capsys.readouterr().err


def test_main_small_grid(tmp_path):
    out = tmp_path / "r.csv"
    rc = main([
        "--sizes", "2^3,2^5",
        "--elem-bytes", "4",
        "--splits", "0.5",
        "--methods", "seq-rotation,srecpar-ls",
        "--threads", "2",
        "--reps", "2",
        "--seed", "3",
        "--out", str(out),
    ])
    assert rc == 0
    records = read_records_csv(out)
    assert len(records) == 4  # (1 seq + 1 parallel x 1 t) x 2 sizes x 1 split


def test_main_validate_only(tmp_path, capsys):
    out = tmp_path / "ignored.csv"
    rc = main([
        "--sizes", "16",
        "--elem-bytes", "4",
        "--splits", "0.25",
        "--methods", "soptmov",
        "--threads", "4",
        "--validate-only",
        "--out", str(out),
    ])
    assert rc == 0
    assert not out.exists()
    assert "validated 1 cells" in capsys.readouterr().out


def test_main_median_quality_study(tmp_path):
    out = tmp_path / "quality.csv"
    rc = main([
        "--study", "median-quality",
        "--sizes", "2^8",
        "--splits", "0.5",
        "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,size,rel_diff_findmedian"
    assert len(lines) == 1 + 4  # t in {2,4,8,16} x one size


def test_main_speedup_output(tmp_path, capsys):
    out = tmp_path / "r.csv"
    rc = main([
        "--sizes", "2^6",
        "--elem-bytes", "4",
        "--splits", "0.5",
        "--methods", "seq-rotation,soptmov",
        "--threads", "2",
        "--reps", "1",
        "--out", str(out),
        "--speedup-baseline", "seq-rotation",
    ])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "speedup soptmov t=2" in captured


def test_main_config_error_exit_code(tmp_path):
    rc = main(["--methods", "warp-merge", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
    rc = main(["--splits", "1.5", "--out", str(tmp_path / "x.csv")])
    assert rc == 2
