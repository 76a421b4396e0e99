"""
Deterministic output files.

Floats are written with 17 significant digits (``%.17g``), which round-trips
every double exactly; files use LF line endings. Wall-clock timings can be
split into a separate file so the data files of repeated runs are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
import structlog

from polysymplectic_spe.errors import IoError
from polysymplectic_spe.model.grid import FieldSnapshot, FloatArray, GridSpec
from polysymplectic_spe.reports import ComparisonReport, ConvergenceRow, ConvergenceTable, RunReport


log = structlog.get_logger()

SNAPSHOT_HEADER = ("x", "u")
TABLE_HEADER = ("level", "dx", "dt", "sigma_final", "wall_seconds", "measured_order", "error")
COMPARISON_HEADER = ("scheme", "x_max", "n_x", "dx", "dt", "n_t", "sigma_final", "wall_seconds", "quadratic_drift")


def fmt(value: float | int | str | None) -> str:
    """Canonical text of one value."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}", path=str(path)) from e
    log.debug("file_written", path=str(path), size=len(text))


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}", path=str(path)) from e


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# =============================================================================
# SNAPSHOTS
# =============================================================================


def write_snapshot(path: str | Path, snapshot: FieldSnapshot, grid: GridSpec) -> None:
    """CSV ``x,u`` with one row per sample, x_i = i dx."""
    x = np.arange(len(snapshot)) * grid.dx
    _write(Path(path), _csv(SNAPSHOT_HEADER, ((fmt(float(xi)), fmt(float(ui))) for xi, ui in zip(x, snapshot.u))))


def read_snapshot(path: str | Path) -> tuple[FloatArray, FloatArray]:
    """Inverse of ``write_snapshot``: (x, u)."""
    rows = list(csv.reader(io.StringIO(_read(Path(path)))))
    if not rows or tuple(rows[0]) != SNAPSHOT_HEADER:
        raise IoError("not a snapshot file", path=str(path))
    data = np.array([[float(a), float(b)] for a, b in rows[1:]], dtype=np.float64).reshape(-1, 2)
    return data[:, 0], data[:, 1]


# =============================================================================
# REPORTS
# =============================================================================


def _run_report_lines(report: RunReport, timing_ref: str | None) -> list[tuple[str, str]]:
    g = report.grid
    lines = [
        ("scheme", report.scheme.value),
        ("x_max", fmt(g.x_max)),
        ("n_x", fmt(g.n_x)),
        ("dx", fmt(g.dx)),
        ("dt", fmt(g.dt)),
        ("n_t", fmt(g.n_t)),
        ("t_final", fmt(g.t_final)),
        ("wall_seconds", f"@{timing_ref}" if timing_ref else fmt(report.wall_seconds)),
        ("sigma_final", fmt(report.sigma_final) if report.sigma_final is not None else "nan"),
    ]
    lines += [(f"sigma@{fmt(t)}", fmt(v)) for t, v in sorted(report.sigma_by_time.items())]
    lines += [(f"drift.{k}", fmt(v)) for k, v in sorted(report.invariant_drift.items())]
    for name, series in sorted(report.monitors.items()):
        lines += [(f"monitor.{name}@{fmt(t)}", fmt(v)) for t, v in sorted(series.items())]
    if report.max_cell_residual is not None:
        lines.append(("max_cell_residual", fmt(report.max_cell_residual)))
    lines += [(f"meta.{k}", fmt(v)) for k, v in sorted(report.metadata.items())]
    return lines


def write_report(
    path: str | Path,
    report: RunReport | ConvergenceTable | ComparisonReport,
    timing_path: str | Path | None = None,
) -> None:
    """
    Write a run report (key=value lines) or a table (CSV).

    With ``timing_path`` the wall-clock values go to that file instead: a run
    report then carries ``wall_seconds=@<file name>`` and tables drop their
    ``wall_seconds`` column.
    """
    path = Path(path)
    timing = Path(timing_path) if timing_path is not None else None

    if isinstance(report, RunReport):
        lines = _run_report_lines(report, timing.name if timing else None)
        _write(path, "".join(f"{k}={v}\n" for k, v in lines))
        if timing:
            _write(timing, f"wall_seconds={fmt(report.wall_seconds)}\n")
        return

    if isinstance(report, ConvergenceTable):
        header = list(TABLE_HEADER)
        rows = [
            [fmt(r.level), fmt(r.dx), fmt(r.dt), fmt(r.sigma_final), fmt(r.wall_seconds), fmt(r.measured_order), r.error or ""]
            for r in report.rows
        ]
        keys = [fmt(r.level) for r in report.rows]
    else:
        header = list(COMPARISON_HEADER)
        rows = [
            [
                r.scheme.value, fmt(r.x_max), fmt(r.n_x), fmt(r.dx), fmt(r.dt), fmt(r.n_t),
                fmt(r.sigma_final), fmt(r.wall_seconds), fmt(r.quadratic_drift),
            ]
            for r in report.rows
        ]
        keys = [r.scheme.value for r in report.rows]

    if timing:
        col = header.index("wall_seconds")
        _write(timing, _csv((header[0], "wall_seconds"), ([k, row[col]] for k, row in zip(keys, rows))))
        header.pop(col)
        rows = [row[:col] + row[col + 1 :] for row in rows]
    _write(path, _csv(header, rows))


def _opt_float(text: str) -> float | None:
    return float(text) if text != "" else None


def read_table(path: str | Path, timing_path: str | Path | None = None) -> list[ConvergenceRow]:
    """
    Rows of a convergence table written by ``write_report``.

    Wall times come from ``timing_path`` when the table was written split;
    otherwise they are NaN if the column is absent.
    """
    rows = list(csv.DictReader(io.StringIO(_read(Path(path)))))
    timings: dict[str, float] = {}
    if timing_path is not None:
        timings = {r["level"]: float(r["wall_seconds"]) for r in csv.DictReader(io.StringIO(_read(Path(timing_path))))}
    try:
        return [
            ConvergenceRow(
                level=int(r["level"]),
                dx=float(r["dx"]),
                dt=float(r["dt"]),
                sigma_final=float(r["sigma_final"]),
                wall_seconds=float(r["wall_seconds"]) if "wall_seconds" in r else timings.get(r["level"], math.nan),
                measured_order=_opt_float(r["measured_order"]),
                error=r["error"] or None,
            )
            for r in rows
        ]
    except (KeyError, ValueError) as e:
        raise IoError(f"malformed table {path}: {e}", path=str(path)) from e


__all__ = ["fmt", "read_snapshot", "read_table", "write_report", "write_snapshot"]
