"""Unit tests for the deterministic writers and their readers."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from polysymplectic_spe.errors import IoError
from polysymplectic_spe.io.writers import TABLE_HEADER, fmt, read_snapshot, read_table, write_report, write_snapshot
from polysymplectic_spe.model.grid import FieldSnapshot, GridSpec
from polysymplectic_spe.reports import ComparisonReport, ComparisonRow, ConvergenceRow, ConvergenceTable, RunReport, Scheme


def _table() -> ConvergenceTable:
    return ConvergenceTable(
        scheme=Scheme.POLYSYMPLECTIC,
        rows=[
            ConvergenceRow(0, 0.2, 0.02, 4e-2, 1.25),
            ConvergenceRow(1, 0.1, 0.01, 1e-2, 4.5, measured_order=2.0),
            ConvergenceRow(2, 0.05, 0.005, math.nan, math.nan, error="newton diverged"),
        ],
    )


class TestFormat:
    @pytest.mark.parametrize(
        ("value", "text"),
        [(0.0, "0"), (0.1, "0.10000000000000001"), (3, "3"), (True, "true"), (None, ""), ("zero", "zero")],
    )
    def test_canonical_text(self, value: float | int | str | None, text: str) -> None:
        assert fmt(value) == text


class TestSnapshots:
    def test_line_count(self, tmp_path: Path) -> None:
        grid = GridSpec(x_max=2.0, n_x=2, dt=0.1, n_t=1)
        write_snapshot(tmp_path / "s.csv", FieldSnapshot(0.0, np.array([0.0, 1.0, 0.0])), grid)
        lines = (tmp_path / "s.csv").read_bytes().split(b"\n")
        assert lines[0] == b"x,u"
        assert len(lines) == 5 and lines[-1] == b""
        assert b"\r" not in (tmp_path / "s.csv").read_bytes()

    def test_zero_field_writes_zero(self, tmp_path: Path) -> None:
        grid = GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=1)
        write_snapshot(tmp_path / "z.csv", FieldSnapshot(0.0, np.zeros(5)), grid)
        rows = (tmp_path / "z.csv").read_text().splitlines()[1:]
        assert all(row.endswith(",0") for row in rows)

    def test_exact_round_trip(self, tmp_path: Path, rng: np.random.Generator) -> None:
        grid = GridSpec(x_max=3.0, n_x=30, dt=0.1, n_t=1)
        u = rng.standard_normal(31) * 10.0 ** rng.uniform(-300, 300, 31)
        write_snapshot(tmp_path / "r.csv", FieldSnapshot(0.0, u), grid)
        x, back = read_snapshot(tmp_path / "r.csv")
        np.testing.assert_array_equal(back, u)
        np.testing.assert_array_equal(x, np.arange(31) * grid.dx)

    def test_bad_header(self, tmp_path: Path) -> None:
        (tmp_path / "bad.csv").write_text("a,b\n1,2\n")
        with pytest.raises(IoError):
            read_snapshot(tmp_path / "bad.csv")

    def test_unwritable_target(self, tmp_path: Path) -> None:
        (tmp_path / "file").write_text("")
        grid = GridSpec(x_max=1.0, n_x=2, dt=0.1, n_t=1)
        with pytest.raises(IoError):
            write_snapshot(tmp_path / "file" / "s.csv", FieldSnapshot(0.0, np.zeros(3)), grid)


class TestTables:
    def test_empty_table_is_header_only(self, tmp_path: Path) -> None:
        write_report(tmp_path / "t.csv", ConvergenceTable(scheme=Scheme.POLYSYMPLECTIC))
        assert (tmp_path / "t.csv").read_text() == ",".join(TABLE_HEADER) + "\n"

    def test_round_trip(self, tmp_path: Path) -> None:
        table = _table()
        write_report(tmp_path / "t.csv", table)
        rows = read_table(tmp_path / "t.csv")
        assert rows[:2] == table.rows[:2]
        assert rows[2].error == "newton diverged"
        assert math.isnan(rows[2].sigma_final)

    def test_timing_split(self, tmp_path: Path) -> None:
        write_report(tmp_path / "t.csv", _table(), timing_path=tmp_path / "t_timing.csv")
        assert "wall_seconds" not in (tmp_path / "t.csv").read_text().splitlines()[0]
        assert (tmp_path / "t_timing.csv").read_text().splitlines()[:2] == ["level,wall_seconds", "0,1.25"]
        rows = read_table(tmp_path / "t.csv", timing_path=tmp_path / "t_timing.csv")
        assert [r.wall_seconds for r in rows[:2]] == [1.25, 4.5]

    def test_comparison_table(self, tmp_path: Path) -> None:
        report = ComparisonReport(
            rows=[ComparisonRow(Scheme.POLYSYMPLECTIC, 100.0, 2048, 100.0 / 2048, 0.01, 500, 1e-5, 2.0, 1e-7)],
            t_final=5.0,
        )
        write_report(tmp_path / "c.csv", report, timing_path=tmp_path / "c_timing.csv")
        lines = (tmp_path / "c.csv").read_text().splitlines()
        assert lines[0] == "scheme,x_max,n_x,dx,dt,n_t,sigma_final,quadratic_drift"
        assert lines[1].startswith("polysymplectic,100,2048,")


class TestRunReportFile:
    @staticmethod
    def _report(wall: float) -> RunReport:
        return RunReport(
            scheme=Scheme.POLYSYMPLECTIC,
            grid=GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=10),
            wall_seconds=wall,
            sigma_by_time={1.0: 2.5e-4},
            invariant_drift={"quadratic_invariant": 1e-9},
            monitors={"quadratic_invariant": {0.0: 1.0, 1.0: 1.000000001}},
            metadata={"seed": 0},
        )

    def test_key_value_lines(self, tmp_path: Path) -> None:
        write_report(tmp_path / "report.txt", self._report(0.5))
        lines = dict(line.split("=", 1) for line in (tmp_path / "report.txt").read_text().splitlines())
        assert lines["scheme"] == "polysymplectic"
        assert lines["wall_seconds"] == "0.5"
        assert float(lines["sigma_final"]) == 2.5e-4
        assert lines["meta.seed"] == "0"
        assert "monitor.quadratic_invariant@1" in lines

    def test_timing_split_is_deterministic(self, tmp_path: Path) -> None:
        write_report(tmp_path / "a.txt", self._report(0.5), timing_path=tmp_path / "a_timing.txt")
        write_report(tmp_path / "b.txt", self._report(7.25), timing_path=tmp_path / "a_timing.txt")
        assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
        assert "wall_seconds=@a_timing.txt" in (tmp_path / "a.txt").read_text()
        assert (tmp_path / "a_timing.txt").read_text() == "wall_seconds=7.25\n"
