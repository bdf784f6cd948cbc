from pathlib import Path

import pytest

import plot

SAMPLES = Path(__file__).resolve().parent.parent
RESULTS = SAMPLES / "sample_results.csv"
QUALITY = SAMPLES / "sample_median_quality.csv"


def test_cache_bar_positions_for_int_records():
    pos = plot.cache_positions((32768, 1048576, 28835840), 4)
    assert pos == [8192, 262144, 7208960]


def test_all_three_kinds_render(tmp_path):
    for kind, src in [
        ("time", RESULTS),
        ("speedup", RESULTS),
        ("median-quality", QUALITY),
    ]:
        out = tmp_path / f"{kind}.png"
        rc = plot.main(
            ["--csv", str(src), "--kind", kind, "--elem-bytes", "4", "--out", str(out)]
        )
        assert rc == 0
        assert out.stat().st_size > 0


def test_speedup_of_baseline_is_flat_one():
    rows = plot.read_time_csv(RESULTS)
    series = plot.build_series("speedup", rows, elem_bytes=4)
    xs, ys = series["seq-rotation"]
    assert len(xs) > 0
    assert all(y == pytest.approx(1.0) for y in ys)


def test_series_are_deterministic():
    rows = plot.read_time_csv(RESULTS)
    a = plot.build_series("time", rows, elem_bytes=4)
    b = plot.build_series("time", rows, elem_bytes=4)
    assert a == b
    qrows = plot.read_quality_csv(QUALITY)
    assert plot.build_series("median-quality", qrows) == plot.build_series(
        "median-quality", qrows
    )


def test_malformed_csv_reports_row(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    good = RESULTS.read_text(encoding="utf-8").splitlines()
    bad.write_text("\n".join(good[:3] + ["seq-rotation,1,4,not-a-number,0.5,1,1,1"]) + "\n",
                   encoding="utf-8")
    rc = plot.main(["--csv", str(bad), "--kind", "time", "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "row 4" in capsys.readouterr().err


def test_wrong_header_is_row_one(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
    rc = plot.main(["--csv", str(bad), "--kind", "time", "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "row 1" in capsys.readouterr().err


def test_bad_cache_config_exit_code(tmp_path):
    rc = plot.main([
        "--csv", str(RESULTS), "--kind", "time",
        "--out", str(tmp_path / "x.png"), "--caches", "100,50",
    ])
    assert rc == 2


def test_missing_baseline_speedup(tmp_path, capsys):
    rows = [r for r in RESULTS.read_text(encoding="utf-8").splitlines()
            if not r.startswith("seq-rotation")]
    src = tmp_path / "nobase.csv"
    src.write_text("\n".join(rows) + "\n", encoding="utf-8")
    rc = plot.main(["--csv", str(src), "--kind", "speedup", "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "seq-rotation" in capsys.readouterr().err
