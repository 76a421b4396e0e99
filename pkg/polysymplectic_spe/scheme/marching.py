"""
Space marching of the polysymplectic scheme.

Columns are computed from the zero right boundary (i = n_x) leftward; within
a column the cells are solved in increasing time order. Column i only needs
column i+1 and the initial-row seed at i, so a run holds two columns at a time
plus the snapshot accumulators.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import InvalidValue, SPEError
from polysymplectic_spe.metrics import hamiltonian_sum, quadratic_invariant, relative_drift
from polysymplectic_spe.model.data import boundary_column, initial_row
from polysymplectic_spe.model.grid import ColumnTrace, DWColumn, FieldSnapshot, FloatArray, GridSpec, TangentColumn
from polysymplectic_spe.reports import RunReport, Scheme
from polysymplectic_spe.scheme.cell import CellInputs, cell_update
from polysymplectic_spe.scheme.tangent import tangent_block


log = structlog.get_logger()


# =============================================================================
# COLUMN MARCH
# =============================================================================


def march_column(right: DWColumn, p_t_0: float, phi_0: float, dx: float, dt: float) -> DWColumn:
    """
    Compute column i from the fully known column i+1.

    Args:
        right: Column i+1.
        p_t_0: Initial-row p_t at i.
        phi_0: Initial-row phi at i.
        dx: Space step.
        dt: Time step.

    Returns:
        Column i with p_t[0] = p_t_0, phi[0] = phi_0 and rows 1..n_t (plus every
        pair-sum) filled by successive cell updates.

    Raises:
        SPEError: any cell failure, annotated with (i, j).
    """
    n_t = right.n_t
    rp, rf, rs = right.p_t.tolist(), right.phi.tolist(), right.s_x.tolist()
    p_t = [p_t_0] + [0.0] * n_t
    phi = [phi_0] + [0.0] * n_t
    s_x = [0.0] * n_t

    for j in range(n_t):
        cell = CellInputs(rp[j], rp[j + 1], p_t[j], rf[j], rf[j + 1], phi[j], rs[j], dx, dt)
        try:
            out = cell_update(cell)
        except SPEError as e:
            raise e.annotate(i=right.i - 1, j=j) from e
        p_t[j + 1], phi[j + 1], s_x[j] = out

    return DWColumn(i=right.i - 1, p_t=np.array(p_t), phi=np.array(phi), s_x=np.array(s_x))


def column_residual(right: DWColumn, left: DWColumn, dx: float, dt: float) -> float:
    """
    Largest midpoint-equation residual over the cells between two columns.

    Vectorized form of ``cell_residual`` divided by ``cell_scale`` per cell.
    """
    pa, pb = right.p_t[:-1], right.p_t[1:]
    pc, pd = left.p_t[:-1], left.p_t[1:]
    fa, fb = right.phi[:-1], right.phi[1:]
    fc, fd = left.phi[:-1], left.phi[1:]
    sr, sn = right.s_x, left.s_x
    q = pa + pb + pc + pd
    r1 = dt * (sr - sn) + dx * (pb + pd - pa - pc) - 0.5 * dx * dt * (fa + fb + fc + fd)
    r2 = (fa + fb - fc - fd) - dx * q
    r3 = (fd + fb - fc - fa) - dt * (sr + sn) - (dt / 12.0) * q**3
    scale = np.maximum.reduce([np.ones_like(sr), *(np.abs(v) for v in (pa, pb, pc, pd, fa, fb, fc, fd, sr, sn))])
    worst = np.maximum.reduce([np.abs(r1), np.abs(r2), np.abs(r3)]) / scale
    return float(np.max(worst, initial=0.0))


# =============================================================================
# FULL RUN
# =============================================================================


def _snapshot_rows(grid: GridSpec, snapshot_times: Iterable[int]) -> list[int]:
    rows = sorted(set(int(j) for j in snapshot_times))
    bad = [j for j in rows if not 0 <= j <= grid.n_t]
    if bad:
        raise InvalidValue("snapshot_times", f"row indices {bad} outside 0..{grid.n_t}")
    return rows


def simulate(
    grid: GridSpec,
    u0: ArrayLike,
    snapshot_times: Iterable[int],
    *,
    boundary_tol: float | None = None,
    check_residuals: bool = False,
) -> tuple[list[FieldSnapshot], RunReport]:
    """
    Solve the initial-boundary value problem u(x, 0) = u0 with u = 0 on the right boundary.

    Args:
        grid: Marching grid.
        u0: Initial field at i = 0..n_x.
        snapshot_times: Time-row indices j to record.
        boundary_tol: Override of the right-boundary tolerance of ``initial_row``.
        check_residuals: Evaluate the midpoint residual of every cell
            (stored as ``report.max_cell_residual``).

    Returns:
        (snapshots ordered by time, RunReport with wall time and invariant monitors).
    """
    rows = _snapshot_rows(grid, snapshot_times)
    monitor_rows = sorted(set(rows) | {0, grid.n_t})
    row_pos = {j: k for k, j in enumerate(monitor_rows)}
    intervals = np.array([min(j, grid.n_t - 1) for j in monitor_rows])
    monitor_idx = np.array(monitor_rows)

    p_row, phi_row = initial_row(u0, grid, boundary_tol)
    u_acc = np.zeros((len(monitor_rows), grid.n_x + 1))
    # interval-averaged phi, p_t and the pair-sum, per monitored row and column
    h_phi = np.zeros_like(u_acc)
    h_pt = np.zeros_like(u_acc)
    h_s = np.zeros_like(u_acc)

    def record(col: DWColumn) -> None:
        u_acc[:, col.i] = 2.0 * col.p_t[monitor_idx]
        h_phi[:, col.i] = 0.5 * (col.phi[intervals] + col.phi[intervals + 1])
        h_pt[:, col.i] = 0.5 * (col.p_t[intervals] + col.p_t[intervals + 1])
        h_s[:, col.i] = col.s_x[intervals]

    log.info("simulation_started", scheme=Scheme.POLYSYMPLECTIC.value, **grid.as_dict())
    worst_residual = 0.0
    progress_every = max(1, grid.n_x // 10)
    start = time.perf_counter()

    column = boundary_column(grid)
    record(column)
    for i in range(grid.n_x - 1, -1, -1):
        left = march_column(column, float(p_row[i]), float(phi_row[i]), grid.dx, grid.dt)
        if check_residuals:
            worst_residual = max(worst_residual, column_residual(column, left, grid.dx, grid.dt))
        record(left)
        column = left
        if i % progress_every == 0:
            log.debug("column_marched", i=i, elapsed=round(time.perf_counter() - start, 3))

    wall = time.perf_counter() - start

    times = {j: j * grid.dt for j in monitor_rows}
    monitors = {
        "quadratic_invariant": {
            times[j]: quadratic_invariant(FieldSnapshot(times[j], u_acc[row_pos[j]]), grid.dx) for j in monitor_rows
        },
        "dw_hamiltonian": {
            times[j]: hamiltonian_sum(h_phi[row_pos[j]], h_s[row_pos[j]], h_pt[row_pos[j]], grid.dx) for j in monitor_rows
        },
    }
    report = RunReport(
        scheme=Scheme.POLYSYMPLECTIC,
        grid=grid,
        wall_seconds=wall,
        invariant_drift={name: relative_drift(series) for name, series in monitors.items()},
        monitors=monitors,
        max_cell_residual=worst_residual if check_residuals else None,
    )
    snapshots = [FieldSnapshot(times[j], u_acc[row_pos[j]]) for j in rows]

    if check_residuals and worst_residual >= settings.scheme.residual_tol:
        log.warning("cell_residual_above_tolerance", residual=worst_residual, tolerance=settings.scheme.residual_tol)
    log.info("simulation_complete", wall_seconds=round(wall, 3), snapshots=len(snapshots))
    return snapshots, report


# =============================================================================
# TRACED RUN WITH TANGENTS
# =============================================================================


@dataclass(frozen=True)
class TangentSeed:
    """Initial-row and right-boundary variations that start a tangent solution."""

    p_t_row: FloatArray
    phi_row: FloatArray
    boundary: TangentColumn

    @classmethod
    def random(cls, grid: GridSpec, rng: np.random.Generator) -> TangentSeed:
        """Uniform variations in [-1, 1] on the initial row and the boundary column."""
        return cls(
            p_t_row=rng.uniform(-1.0, 1.0, grid.n_x + 1),
            phi_row=rng.uniform(-1.0, 1.0, grid.n_x + 1),
            boundary=TangentColumn(
                i=grid.n_x,
                p_t=rng.uniform(-1.0, 1.0, grid.n_t + 1),
                phi=rng.uniform(-1.0, 1.0, grid.n_t + 1),
                s_x=rng.uniform(-1.0, 1.0, grid.n_t),
            ),
        )


@dataclass(frozen=True)
class SimulationTrace:
    """Every base column of a run plus the tangent solutions propagated along it."""

    grid: GridSpec
    base: ColumnTrace
    tangents: list[ColumnTrace]


def simulate_trace(
    grid: GridSpec,
    u0: ArrayLike,
    seeds: Sequence[TangentSeed] = (),
    *,
    boundary_tol: float | None = None,
) -> SimulationTrace:
    """
    March like ``simulate`` but keep every column, propagating tangents cell by cell.

    Tangent column i+1 and the seed's initial-row variation at i feed the
    linearized update of each cell. Meant for diagnostics on modest grids:
    memory grows with n_x * n_t.
    """
    p_row, phi_row = initial_row(u0, grid, boundary_tol)
    n_t, k = grid.n_t, len(seeds)
    dx, dt = grid.dx, grid.dt

    base_cols = [boundary_column(grid)]
    tan_cols: list[list[TangentColumn]] = [[seed.boundary] for seed in seeds]

    for i in range(grid.n_x - 1, -1, -1):
        right = base_cols[-1]
        left = march_column(right, float(p_row[i]), float(phi_row[i]), dx, dt)
        base_cols.append(left)
        if not k:
            continue

        t_right = [cols[-1] for cols in tan_cols]
        dp = np.zeros((k, n_t + 1))
        dphi = np.zeros((k, n_t + 1))
        ds = np.zeros((k, n_t))
        dp[:, 0] = [seed.p_t_row[i] for seed in seeds]
        dphi[:, 0] = [seed.phi_row[i] for seed in seeds]
        for j in range(n_t):
            cell = CellInputs(
                right.p_t[j], right.p_t[j + 1], left.p_t[j], right.phi[j], right.phi[j + 1], left.phi[j], right.s_x[j], dx, dt
            )
            out = (left.p_t[j + 1], left.phi[j + 1], left.s_x[j])
            variations = np.array(
                [[t.p_t[j], t.p_t[j + 1], dp[m, j], t.phi[j], t.phi[j + 1], dphi[m, j], t.s_x[j]] for m, t in enumerate(t_right)]
            )
            try:
                block = tangent_block(cell, out, variations.T)
            except SPEError as e:
                raise e.annotate(i=i, j=j) from e
            dp[:, j + 1], dphi[:, j + 1], ds[:, j] = block
        for m in range(k):
            tan_cols[m].append(TangentColumn(i=i, p_t=dp[m], phi=dphi[m], s_x=ds[m]))

    return SimulationTrace(
        grid=grid,
        base=ColumnTrace.from_columns(base_cols),
        tangents=[ColumnTrace.from_columns(cols) for cols in tan_cols],
    )


__all__ = [
    "SimulationTrace",
    "TangentSeed",
    "column_residual",
    "march_column",
    "simulate",
    "simulate_trace",
]
