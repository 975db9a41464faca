from pathlib import Path

import pytest

from plotview.plot import SeriesRow, main, parse_series, render

GOLDEN = Path(__file__).parent / "data" / "published_comparison.csv"

# reductions recomputed here from the golden file's own distance columns:
# 100 * (D_enc - D_bare) / D_bare
EXPECTED = {
    "f0": 100 * (0.00178 - 0.01929) / 0.01929,
    "fx": 100 * (0.00128 - 0.00317) / 0.00317,
    "f1x": 100 * (0.00076 - 0.00513) / 0.00513,
    "f1": 100 * (0.00129 - 0.01782) / 0.01782,
}


def test_parse_golden_series_values():
    rows = parse_series(GOLDEN)
    assert [r.label for r in rows] == ["f0", "fx", "f1x", "f1"]
    for row in rows:
        assert row.reduction_pct == pytest.approx(EXPECTED[row.label], abs=5e-4)


def test_sigma_propagation():
    rows = {r.label: r for r in parse_series(GOLDEN)}
    assert rows["f0"].sigma_pct == pytest.approx(100 * 0.00159 / 0.01929, abs=1e-9)
    assert rows["fx"].sigma_pct == pytest.approx(100 * 0.00074 / 0.00317, abs=1e-9)


def test_render_four_bar_chart(tmp_path):
    out = tmp_path / "bars.png"
    rows = render(GOLDEN, out)
    assert len(rows) == 4
    assert out.exists() and out.stat().st_size > 0
    for row in rows:
        assert row.reduction_pct == pytest.approx(EXPECTED[row.label], abs=5e-4)


def test_render_is_pure_in_the_csv(tmp_path):
    first = render(GOLDEN, tmp_path / "a.png")
    second = render(GOLDEN, tmp_path / "b.svg")
    assert first == second


def test_single_row_renders(tmp_path):
    csv = tmp_path / "one.csv"
    csv.write_text(
        "circuit,shots,accepted,post_selection_ratio,D_bare,sigma_bare,"
        "D_enc,sigma_enc,diff,sigma_diff,reduction_pct\n"
        "f0,4096,3924,0.95800,0.01929,0.00152,0.00178,0.00048,-0.01751,0.00159,-90.77242\n"
    )
    out = tmp_path / "one.pdf"
    rows = render(csv, out)
    assert len(rows) == 1 and out.stat().st_size > 0


def test_zero_reduction_zero_sigma_renders(tmp_path):
    csv = tmp_path / "zero.csv"
    csv.write_text(
        "circuit,shots,accepted,post_selection_ratio,D_bare,sigma_bare,"
        "D_enc,sigma_enc,diff,sigma_diff,reduction_pct\n"
        "f0,4096,4096,1.00000,0.10000,0.00000,0.10000,0.00000,0.00000,0.00000,0.00000\n"
    )
    rows = render(csv, tmp_path / "zero.png")
    assert rows == [SeriesRow("f0", 0.0, 0.0)]


def test_missing_column_is_hard_error(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("circuit,D_bare,sigma_diff\nf0,0.1,0.01\n")
    with pytest.raises(ValueError, match="missing required column"):
        parse_series(csv)


def test_malformed_number_is_hard_error(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text(
        "circuit,D_bare,sigma_diff,reduction_pct\nf0,not-a-number,0.01,-90.0\n"
    )
    with pytest.raises(ValueError, match="malformed"):
        parse_series(csv)


def test_empty_table_is_hard_error(tmp_path):
    csv = tmp_path / "empty.csv"
    csv.write_text("circuit,D_bare,sigma_diff,reduction_pct\n")
    with pytest.raises(ValueError, match="no plottable rows"):
        parse_series(csv)


def test_cli_round_trip(tmp_path, capsys):
    out = tmp_path / "chart.png"
    code = main(["--input", str(GOLDEN), "--output", str(out)])
    assert code == 0
    assert out.exists()
    assert "4 bars" in capsys.readouterr().out


def test_cli_reports_errors(tmp_path, capsys):
    code = main(["--input", str(tmp_path / "missing.csv"), "--output", str(tmp_path / "x.png")])
    assert code == 1
    assert "error:" in capsys.readouterr().err
