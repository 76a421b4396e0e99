"""
Run and study result records.

Structured the same way for both integrators so the writers and the
comparison harness never need to know which scheme produced a report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from polysymplectic_spe.model.grid import GridSpec


class Scheme(Enum):
    """Integrator identifier."""

    POLYSYMPLECTIC = "polysymplectic"
    PSEUDOSPECTRAL = "pseudospectral"


@dataclass
class RunReport:
    """Outcome of one simulation run."""

    scheme: Scheme
    grid: GridSpec
    wall_seconds: float = 0.0
    sigma_by_time: dict[float, float] = field(default_factory=dict)
    invariant_drift: dict[str, float] = field(default_factory=dict)
    # name -> {time -> value}
    monitors: dict[str, dict[float, float]] = field(default_factory=dict)
    max_cell_residual: float | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def sigma_final(self) -> float | None:
        if not self.sigma_by_time:
            return None
        return self.sigma_by_time[max(self.sigma_by_time)]


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level of a study."""

    level: int
    dx: float
    dt: float
    sigma_final: float
    wall_seconds: float
    measured_order: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and math.isfinite(self.sigma_final)


@dataclass
class ConvergenceTable:
    """Rows sorted by refinement level; orders from successive sigma ratios."""

    scheme: Scheme
    rows: list[ConvergenceRow] = field(default_factory=list)
    label: str = ""

    def orders(self) -> list[float]:
        return [r.measured_order for r in self.rows if r.measured_order is not None]


def with_measured_orders(rows: list[ConvergenceRow]) -> list[ConvergenceRow]:
    """
    Fill ``measured_order`` from successive sigma ratios.

    The refinement ratio is taken from dx when it changes between levels,
    otherwise from dt (fixed-dx sweeps).
    """
    ordered = sorted(rows, key=lambda r: r.level)
    out: list[ConvergenceRow] = []
    for k, row in enumerate(ordered):
        order = None
        if k > 0:
            prev = ordered[k - 1]
            ratio = prev.dx / row.dx if not math.isclose(prev.dx, row.dx) else prev.dt / row.dt
            if prev.ok and row.ok and row.sigma_final > 0 and prev.sigma_final > 0 and ratio > 1:
                order = math.log(prev.sigma_final / row.sigma_final) / math.log(ratio)
        out.append(
            ConvergenceRow(
                level=row.level,
                dx=row.dx,
                dt=row.dt,
                sigma_final=row.sigma_final,
                wall_seconds=row.wall_seconds,
                measured_order=order,
                error=row.error,
            )
        )
    return out


@dataclass(frozen=True)
class ComparisonRow:
    """One scheme of a head-to-head run, with the grid needed to repeat it."""

    scheme: Scheme
    x_max: float
    n_x: int
    dx: float
    dt: float
    n_t: int
    sigma_final: float
    wall_seconds: float
    quadratic_drift: float

    @classmethod
    def from_report(cls, report: RunReport) -> ComparisonRow:
        g = report.grid
        sigma = report.sigma_final
        return cls(
            scheme=report.scheme,
            x_max=g.x_max,
            n_x=g.n_x,
            dx=g.dx,
            dt=g.dt,
            n_t=g.n_t,
            sigma_final=math.nan if sigma is None else sigma,
            wall_seconds=report.wall_seconds,
            quadratic_drift=report.invariant_drift.get("quadratic_invariant", math.nan),
        )


@dataclass
class ComparisonReport:
    """Side-by-side accuracy and cost of the two integrators."""

    rows: list[ComparisonRow] = field(default_factory=list)
    t_final: float = 0.0
    soliton_m: float | None = None

    def row(self, scheme: Scheme) -> ComparisonRow | None:
        return next((r for r in self.rows if r.scheme is scheme), None)

    def precision_ratio(self) -> float | None:
        """sigma(pseudo-spectral) / sigma(polysymplectic)."""
        psi, spec = self.row(Scheme.POLYSYMPLECTIC), self.row(Scheme.PSEUDOSPECTRAL)
        if psi is None or spec is None or psi.sigma_final <= 0.0:
            return None
        return spec.sigma_final / psi.sigma_final

    def speed_ratio(self) -> float | None:
        """wall(pseudo-spectral) / wall(polysymplectic)."""
        psi, spec = self.row(Scheme.POLYSYMPLECTIC), self.row(Scheme.PSEUDOSPECTRAL)
        if psi is None or spec is None or psi.wall_seconds <= 0.0:
            return None
        return spec.wall_seconds / psi.wall_seconds


__all__ = [
    "ComparisonReport",
    "ComparisonRow",
    "ConvergenceRow",
    "ConvergenceTable",
    "RunReport",
    "Scheme",
    "with_measured_orders",
]
