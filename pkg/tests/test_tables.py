import numpy as np
import pytest

from qslsim import SweepTable


def test_cell_formatting():
    table = SweepTable(
        ("a", "b", "c", "d"),
        [
            (0.05, 1, None, True),
            (np.float64(0.1), np.int64(2), np.float64(-1e-9), np.bool_(False)),
        ],
    )
    lines = table.to_csv().strip().split("\n")
    assert lines[0] == "a,b,c,d"
    assert lines[1] == "0.05,1,,true"
    assert lines[2] == "0.1,2,-1e-09,false"


def test_row_width_checked():
    with pytest.raises(ValueError):
        SweepTable(("a", "b"), [(1.0,)])


def test_column_accessor():
    table = SweepTable(("x", "y"), [(1.0, 2.0), (3.0, 4.0)])
    assert table.column("y") == [2.0, 4.0]
    with pytest.raises(ValueError):
        table.column("z")


def test_write_csv_deterministic(tmp_path):
    table = SweepTable(("x", "y"), [(0.1, -2.0), (0.2, None)])
    p1 = table.write_csv(tmp_path / "one.csv")
    p2 = table.write_csv(tmp_path / "two.csv")
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text() == "x,y\n0.1,-2.0\n0.2,\n"
