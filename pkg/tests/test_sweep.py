import io
from fractions import Fraction

import pytest

from secureic.sweep import HEADER, SweepRow, alpha_grid, read_csv, sweep_row, sweep_rows, to_csv, write_csv


@pytest.mark.parametrize(
    "alpha,expected",
    [(0.5, (1.0, 1.0, 1.0)), (0.75, (1.0, 1.25, 0.5)), (2.0, (0.0, 2.0, 0.0)), (0.0, (2.0, 2.0, 2.0))],
)
def test_golden_rows(alpha, expected):
    r = sweep_row(alpha)
    assert (r.secure_sum_norm, r.nonsecure_sum_norm, r.wocj_sum_norm) == expected


def test_grid_hits_exact_rationals():
    g = alpha_grid(0, 3, 301)
    assert g[0] == 0 and g[-1] == 3 and len(g) == 301
    assert Fraction(3, 4) in g and Fraction(3, 2) in g
    assert alpha_grid("0.1", "0.2", 2) == [Fraction(1, 10), Fraction(1, 5)]
    assert alpha_grid(0.1, 0.2, 2) == [Fraction(1, 10), Fraction(1, 5)]


@pytest.mark.parametrize("lo,hi,steps", [(1, 1, 5), (2, 1, 5), (-1, 1, 5), (0, 1, 1)])
def test_grid_rejects_bad_range(lo, hi, steps):
    with pytest.raises(ValueError):
        alpha_grid(lo, hi, steps)


def test_row_ordering_invariant():
    with pytest.raises(ValueError):
        SweepRow(1.0, 2.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        SweepRow(1.0, 0.5, 1.0, 0.7)


def test_csv_format():
    text = to_csv(sweep_rows(0, 2, 9))
    lines = text.split("\n")
    assert lines[0] == ",".join(HEADER)
    assert "\r" not in text and text.endswith("\n")
    assert lines[1] == "0.0,2.0,2.0,2.0"
    assert "0.75,1.0,1.25,0.5" in lines
    assert lines[-2] == "2.0,0.0,2.0,0.0"
    assert len(lines) == 9 + 2


def test_csv_round_trip():
    rows = sweep_rows(0, 3, 301)
    buf = io.StringIO()
    write_csv(rows, buf)
    buf.seek(0)
    assert read_csv(buf) == rows


def test_read_csv_rejects_header():
    with pytest.raises(ValueError):
        read_csv(io.StringIO("a,b\n1,2\n"))


def test_plot_written(tmp_path):
    from secureic.plotting import plot_sweep

    out = plot_sweep(sweep_rows(0, 3, 61), tmp_path / "curves.png")
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
