"""
Initial data and reference fields for accuracy studies.

The exact soliton is the reference whenever its transcription passes the
residual certification. Otherwise, or where the parametric map cannot be
inverted, a pseudo-spectral run on a finer grid from the t = 0 profile stands
in for it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog
from scipy.interpolate import CubicSpline

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import NonInvertibleParametrization
from polysymplectic_spe.metrics import sigma_error
from polysymplectic_spe.model.grid import FieldSnapshot, FloatArray, GridSpec
from polysymplectic_spe.solutions.sakovich import (
    Certification,
    SolitonParams,
    certify_soliton,
    refinement_orders,
    sakovich_field,
)
from polysymplectic_spe.spectral.solver import simulate_spectral


log = structlog.get_logger()


class InitialCondition(Enum):
    """Initial data of a run."""

    SAKOVICH = "sakovich"
    ZERO = "zero"


class ReferenceSource(Enum):
    """Where a reference field came from."""

    EXACT = "exact"
    SPECTRAL_FALLBACK = "spectral_fallback"
    ZERO = "zero"


@dataclass(frozen=True)
class ReferenceField:
    """Reference snapshot plus its provenance."""

    snapshot: FieldSnapshot
    source: ReferenceSource


def sample_points(grid: GridSpec, periodic: bool) -> FloatArray:
    """x_i = i dx: n_x + 1 points on the marching grid, n_x on the periodic one."""
    x = grid.x_points()
    return x[:-1] if periodic else x


def center_of(grid: GridSpec, x_center: float | None) -> float:
    return grid.x_max / 2.0 if x_center is None else x_center


@functools.lru_cache(maxsize=16)
def certified(m: float) -> Certification:
    """Certification of the soliton with parameter m, computed once per process."""
    return certify_soliton(SolitonParams(m))


def periodic_profile(params: SolitonParams, x: FloatArray, x_center: float, t: float = 0.0) -> FloatArray:
    """
    Soliton samples at time ``t`` on a periodic grid, projected onto zero mean.

    The truncated exponential tails leave a mean of the order of the tail
    mass over the period. Periodic solutions conserve a zero mean, so both the
    spectral initial data and any periodic reference need it removed.
    """
    u = sakovich_field(params, x, t, x_center)
    mean = float(np.mean(u))
    log.info("periodic_profile_demeaned", mean=mean, points=u.size, t=t)
    return u - mean


def initial_field(
    kind: InitialCondition,
    params: SolitonParams,
    grid: GridSpec,
    *,
    periodic: bool = False,
    x_center: float | None = None,
) -> FloatArray:
    """Initial data sampled on the marching (or periodic) points of ``grid``."""
    x = sample_points(grid, periodic)
    if kind is InitialCondition.ZERO:
        return np.zeros_like(x)
    if periodic:
        return periodic_profile(params, x, center_of(grid, x_center))
    return sakovich_field(params, x, 0.0, center_of(grid, x_center))


def _next_power_of_two(n: int) -> int:
    return 1 << max(1, math.ceil(math.log2(n)))


def spectral_fallback(
    params: SolitonParams,
    grid: GridSpec,
    t: float,
    *,
    periodic: bool = False,
    x_center: float | None = None,
    refinement: int | None = None,
) -> FieldSnapshot:
    """
    Fine-grid pseudo-spectral solution at time ``t`` sampled on ``grid``.

    Both steps are refined ``refinement`` times (rounded up to a power-of-two
    point count) and the result is carried to the target points by a periodic
    cubic spline.
    """
    r = settings.bench.fallback_refinement if refinement is None else refinement
    n_fine = _next_power_of_two(r * grid.n_x)
    dt_fine = grid.dt / r
    steps = round(t / dt_fine)
    fine = GridSpec(x_max=grid.x_max, n_x=n_fine, dt=dt_fine, n_t=max(steps, 1))
    x_fine = sample_points(fine, periodic=True)
    u0 = periodic_profile(params, x_fine, center_of(grid, x_center))

    if steps == 0:
        u_fine = u0
    else:
        snaps, _ = simulate_spectral(fine, u0, [steps])
        u_fine = snaps[0].u

    spline = CubicSpline(np.append(x_fine, grid.x_max), np.append(u_fine, u_fine[0]), bc_type="periodic")
    log.info("spectral_fallback_computed", n_fine=n_fine, dt_fine=dt_fine, t=t)
    return FieldSnapshot(t=t, u=spline(sample_points(grid, periodic)))


def fallback_self_convergence(
    params: SolitonParams,
    grid: GridSpec,
    t: float,
    *,
    x_center: float | None = None,
    refinements: tuple[int, ...] = (1, 2, 4, 8),
    min_order: float | None = None,
) -> Certification:
    """
    Self-convergence of the fallback: differences between successive refinements
    must shrink at ``min_order`` or better.
    """
    snaps = [spectral_fallback(params, grid, t, periodic=True, x_center=x_center, refinement=r) for r in refinements]
    diffs = [sigma_error(a, b) for a, b in zip(snaps, snaps[1:])]
    steps = [grid.dt / r for r in refinements[:-1]]
    required = settings.bench.certification_min_order if min_order is None else min_order
    return Certification(steps=steps, residuals=diffs, orders=refinement_orders(steps, diffs), min_order=required)


def reference_snapshot(
    kind: InitialCondition,
    params: SolitonParams,
    grid: GridSpec,
    t: float,
    *,
    periodic: bool = False,
    x_center: float | None = None,
) -> ReferenceField:
    """
    Reference field at time ``t`` on the points of ``grid``.

    Uses the exact soliton when it is certified, the spectral fallback otherwise.
    On the periodic points the exact field is projected onto zero mean like
    the spectral initial data.
    """
    x = sample_points(grid, periodic)
    if kind is InitialCondition.ZERO:
        return ReferenceField(FieldSnapshot(t=t, u=np.zeros_like(x)), ReferenceSource.ZERO)

    cert = certified(params.m)
    if cert.passed:
        try:
            center = center_of(grid, x_center)
            u = periodic_profile(params, x, center, t) if periodic else sakovich_field(params, x, t, center)
            return ReferenceField(FieldSnapshot(t=t, u=u), ReferenceSource.EXACT)
        except NonInvertibleParametrization as e:
            log.warning("exact_reference_unavailable", error=str(e))
    else:
        log.warning("soliton_not_certified", m=params.m, order=cert.observed_order)

    snap = spectral_fallback(params, grid, t, periodic=periodic, x_center=x_center)
    return ReferenceField(snap, ReferenceSource.SPECTRAL_FALLBACK)


__all__ = [
    "InitialCondition",
    "ReferenceField",
    "ReferenceSource",
    "certified",
    "fallback_self_convergence",
    "initial_field",
    "periodic_profile",
    "reference_snapshot",
    "sample_points",
    "spectral_fallback",
]
