"""
Convergence studies.

Architecture:
    convergence_study / dt_sweep
        │
        └─► StudyOrchestrator (asyncio semaphore, max_workers)
                │
                ├── Level 0: grid → initial data → timed runs → sigma vs reference
                ├── Level 1: ...
                └── Level k: ...

A failing level becomes a row carrying the error message; the remaining
levels still run. With the default ``max_workers = 1`` levels run one after
another so wall-clock timings do not compete for the CPU.
"""

from __future__ import annotations

import asyncio
import math
import statistics
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import structlog

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import SPEError
from polysymplectic_spe.flows.reference import InitialCondition, initial_field, reference_snapshot
from polysymplectic_spe.metrics import sigma_error
from polysymplectic_spe.model.grid import FieldSnapshot, GridSpec
from polysymplectic_spe.reports import ConvergenceRow, ConvergenceTable, RunReport, Scheme, with_measured_orders
from polysymplectic_spe.scheme.marching import simulate
from polysymplectic_spe.solutions.sakovich import SolitonParams
from polysymplectic_spe.spectral.solver import simulate_spectral


log = structlog.get_logger()


# =============================================================================
# DATA STRUCTURES
# =============================================================================


@dataclass(frozen=True)
class StudyLevel:
    """One refinement level: step sizes of a run."""

    level: int
    dx: float
    dt: float


@dataclass
class StudyConfig:
    """Everything except the step sizes that defines a study run."""

    scheme: Scheme
    params: SolitonParams
    t_final: float
    x_max: float
    x_center: float | None = None
    initial: InitialCondition = InitialCondition.SAKOVICH
    boundary_tol: float | None = None
    dealias: bool | None = None
    timing_repeats: int = field(default_factory=lambda: settings.bench.timing_repeats)

    @property
    def periodic(self) -> bool:
        return self.scheme is Scheme.PSEUDOSPECTRAL


def richardson_levels(dx0: float, dt0: float, count: int) -> list[tuple[float, float]]:
    """Simultaneous halving of both steps, ``count`` levels."""
    return [(dx0 / 2**k, dt0 / 2**k) for k in range(count)]


# =============================================================================
# SINGLE RUN
# =============================================================================


def run_once(config: StudyConfig, grid: GridSpec) -> tuple[FieldSnapshot, RunReport]:
    """One simulation to ``t_final`` on ``grid``, returning the final snapshot and its report."""
    u0 = initial_field(config.initial, config.params, grid, periodic=config.periodic, x_center=config.x_center)
    if config.scheme is Scheme.POLYSYMPLECTIC:
        snaps, report = simulate(grid, u0, [grid.n_t], boundary_tol=config.boundary_tol)
    else:
        snaps, report = simulate_spectral(grid, u0, [grid.n_t], dealias=config.dealias)
    return snaps[-1], report


def timed_run(config: StudyConfig, grid: GridSpec) -> RunReport:
    """
    Run ``timing_repeats`` times, score the first run against the reference and
    report the median wall time.
    """
    final, report = run_once(config, grid)
    timings = [report.wall_seconds]
    for _ in range(max(0, config.timing_repeats - 1)):
        timings.append(run_once(config, grid)[1].wall_seconds)

    ref = reference_snapshot(
        config.initial,
        config.params,
        grid,
        final.t,
        periodic=config.periodic,
        x_center=config.x_center,
    )
    report.wall_seconds = statistics.median(timings)
    report.sigma_by_time[final.t] = sigma_error(final, ref.snapshot)
    report.metadata.update(reference=ref.source.value, timing_repeats=len(timings), soliton_m=config.params.m)
    return report


def run_level(config: StudyConfig, level: StudyLevel) -> ConvergenceRow:
    grid = GridSpec.from_steps(config.x_max, level.dx, level.dt, config.t_final)
    report = timed_run(config, grid)
    return ConvergenceRow(
        level=level.level,
        dx=grid.dx,
        dt=grid.dt,
        sigma_final=report.sigma_final if report.sigma_final is not None else math.nan,
        wall_seconds=report.wall_seconds,
    )


# =============================================================================
# ORCHESTRATOR
# =============================================================================


class StudyOrchestrator:
    """
    Async orchestrator running study levels with bounded concurrency.

    Example:
        orchestrator = StudyOrchestrator(max_workers=2)
        rows = asyncio.run(orchestrator.run_levels(config, levels))
    """

    def __init__(self, max_workers: int | None = None):
        """Initialize the orchestrator.

        Args:
            max_workers: Maximum number of concurrent levels
                (defaults to ``settings.bench.max_workers``).
        """
        self.max_workers = settings.bench.max_workers if max_workers is None else max_workers
        self.active_levels: dict[int, StudyLevel] = {}
        self.results: list[ConvergenceRow] = []
        self.semaphore = asyncio.Semaphore(self.max_workers)

    @staticmethod
    def _failed(level: StudyLevel, error: BaseException) -> ConvergenceRow:
        return ConvergenceRow(
            level=level.level, dx=level.dx, dt=level.dt, sigma_final=math.nan, wall_seconds=math.nan, error=str(error)
        )

    async def run_level(self, config: StudyConfig, level: StudyLevel) -> ConvergenceRow:
        """Run one level in a worker thread."""
        async with self.semaphore:
            self.active_levels[level.level] = level
            log.info("level_started", level=level.level, dx=level.dx, dt=level.dt, scheme=config.scheme.value)
            try:
                row = await asyncio.to_thread(run_level, config, level)
                log.info("level_complete", level=level.level, sigma=row.sigma_final, wall_seconds=row.wall_seconds)
                return row
            except SPEError as e:
                log.error("level_failed", level=level.level, error=str(e), category=e.category.name)
                return self._failed(level, e)
            finally:
                del self.active_levels[level.level]

    async def run_levels(self, config: StudyConfig, levels: Sequence[StudyLevel]) -> list[ConvergenceRow]:
        """Run all levels (limited by the semaphore) and fill in measured orders."""
        log.info("study_started", total_levels=len(levels), max_workers=self.max_workers, scheme=config.scheme.value)

        results = await asyncio.gather(
            *[self.run_level(config, level) for level in levels],
            return_exceptions=True,
        )

        # Convert unexpected exceptions to failed rows
        rows: list[ConvergenceRow] = []
        for level, result in zip(levels, results):
            if isinstance(result, BaseException):
                log.error("level_crashed", level=level.level, error=repr(result))
                rows.append(self._failed(level, result))
            else:
                rows.append(result)

        self.results = with_measured_orders(rows)
        summary = self.get_summary()
        log.info("study_complete", **summary)
        return self.results

    def get_summary(self) -> dict[str, Any]:
        """Get summary of the last study."""
        return {
            "total": len(self.results),
            "successful": sum(1 for r in self.results if r.ok),
            "failed": sum(1 for r in self.results if not r.ok),
            "orders": [round(r.measured_order, 3) for r in self.results if r.measured_order is not None],
        }


# =============================================================================
# STUDIES
# =============================================================================


def convergence_study(
    config: StudyConfig,
    levels: Sequence[tuple[float, float]],
    *,
    max_workers: int | None = None,
    label: str = "",
) -> ConvergenceTable:
    """
    Run every (dx, dt) level and tabulate sigma, timing and measured order.

    Args:
        config: Scheme, soliton and domain of the study.
        levels: Step pairs, coarsest first.
        max_workers: Concurrent levels (defaults to ``settings.bench.max_workers``).
        label: Free-text tag carried by the table.

    Returns:
        ConvergenceTable with rows sorted by level.
    """
    if not levels:
        return ConvergenceTable(scheme=config.scheme, rows=[], label=label)
    study_levels = [StudyLevel(level=k, dx=dx, dt=dt) for k, (dx, dt) in enumerate(levels)]
    rows = asyncio.run(StudyOrchestrator(max_workers).run_levels(config, study_levels))
    return ConvergenceTable(scheme=config.scheme, rows=rows, label=label)


def dt_sweep(
    config: StudyConfig,
    dx_values: Sequence[float],
    dt_values: Sequence[float],
    *,
    max_workers: int | None = None,
) -> list[ConvergenceTable]:
    """
    sigma against dt for each fixed dx, one table per dx.

    ``dt_values`` are sorted from coarse to fine; orders are computed from the
    dt ratio since dx does not change within a table.
    """
    ordered_dt = sorted(dt_values, reverse=True)
    return [
        convergence_study(config, [(dx, dt) for dt in ordered_dt], max_workers=max_workers, label=f"dx={dx!r}")
        for dx in dx_values
    ]


def decreases_to_floor(table: ConvergenceTable, factor: float = 2.0) -> bool:
    """
    True when sigma does not increase between successive levels, except once it is
    within ``factor`` of the table's smallest sigma (the dx floor).
    """
    sigmas = [r.sigma_final for r in table.rows if r.ok]
    if len(sigmas) < 2:
        return True
    floor = min(sigmas)
    return all(cur <= prev or prev <= factor * floor for prev, cur in zip(sigmas, sigmas[1:]))


__all__ = [
    "StudyConfig",
    "StudyLevel",
    "StudyOrchestrator",
    "convergence_study",
    "decreases_to_floor",
    "dt_sweep",
    "richardson_levels",
    "run_level",
    "run_once",
    "timed_run",
]
