"""
Pseudo-spectral RK4 baseline for the short pulse equation.

Integrating the equation once in x gives the evolution form

    u_t = dx^{-1} u + (1/6) (u**3)_x

on a periodic domain of n = 2**k points. Derivatives and the zero-mean
antiderivative are taken in Fourier space, the cube in physical space.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import BadLength, InstabilityDetected, InvalidValue, NonZeroMean
from polysymplectic_spe.metrics import relative_drift
from polysymplectic_spe.model.grid import FieldSnapshot, FloatArray, GridSpec
from polysymplectic_spe.reports import RunReport, Scheme


log = structlog.get_logger()

Rhs = Callable[["SpectralState"], FloatArray]


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


def _checked(u: ArrayLike) -> FloatArray:
    arr = np.asarray(u, dtype=np.float64)
    if arr.ndim != 1 or not _is_power_of_two(arr.size):
        raise BadLength("spectral data length must be a power of two", length=arr.shape)
    return arr


def _wavenumbers(n: int, x_max: float) -> FloatArray:
    """Angular wavenumbers of the rfft modes, Nyquist included."""
    return 2.0 * np.pi * np.arange(n // 2 + 1) / x_max


@dataclass(frozen=True)
class SpectralState:
    """Periodic field on x_k = k x_max / n, k = 0..n-1, at time ``t``."""

    u: FloatArray
    x_max: float
    t: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _checked(self.u).copy())

    @property
    def n(self) -> int:
        return int(self.u.size)

    def advanced(self, u: FloatArray, dt: float) -> SpectralState:
        return SpectralState(u=u, x_max=self.x_max, t=self.t + dt)


# =============================================================================
# FOURIER OPERATORS
# =============================================================================


def spectral_dx(u: ArrayLike, x_max: float) -> FloatArray:
    """
    Fourier derivative; the Nyquist mode's derivative is zeroed.

    Raises:
        BadLength: length is not a power of two.
    """
    arr = _checked(u)
    n = arr.size
    ik = 1j * _wavenumbers(n, x_max)
    ik[-1] = 0.0
    return np.fft.irfft(ik * np.fft.rfft(arr), n=n)


def spectral_dx_inv(u: ArrayLike, x_max: float, zero_mean_tol: float | None = None) -> FloatArray:
    """
    Zero-mean antiderivative: mode k != 0 divided by i k, mode 0 set to zero.

    The Nyquist mode has no real antiderivative on the grid and is dropped.

    Raises:
        BadLength: length is not a power of two.
        NonZeroMean: |mean(u)| exceeds the tolerance relative to max(1, max|u|).
    """
    arr = _checked(u)
    n = arr.size
    tol = settings.spectral.zero_mean_tol if zero_mean_tol is None else zero_mean_tol
    mean = float(np.mean(arr))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if abs(mean) > tol * scale:
        raise NonZeroMean("antiderivative undefined for data with non-zero mean", mean=mean, tolerance=tol * scale)

    k = _wavenumbers(n, x_max)
    modes = np.fft.rfft(arr)
    inv = np.zeros_like(modes)
    inv[1:-1] = modes[1:-1] / (1j * k[1:-1])
    return np.fft.irfft(inv, n=n)


def _dealias(v: FloatArray) -> FloatArray:
    """2/3 rule: zero every mode with k > n/3."""
    n = v.size
    modes = np.fft.rfft(v)
    modes[np.arange(modes.size) > n // 3] = 0.0
    return np.fft.irfft(modes, n=n)


def spe_rhs(state: SpectralState, dealias: bool = False) -> FloatArray:
    """u_t = dx^{-1} u + (1/6) (u**3)_x evaluated pseudo-spectrally."""
    u = state.u
    cube = u * u * u
    if dealias:
        cube = _dealias(cube)
    return spectral_dx_inv(u, state.x_max) + spectral_dx(cube, state.x_max) / 6.0


# =============================================================================
# TIME STEPPING
# =============================================================================


def rk4_step(state: SpectralState, dt: float, rhs: Rhs | None = None, *, dealias: bool = False) -> SpectralState:
    """
    Classical four-stage Runge-Kutta step.

    Args:
        state: Current state.
        dt: Step size.
        rhs: Right-hand side (defaults to ``spe_rhs``).
        dealias: Passed to the default right-hand side.
    """
    f = rhs if rhs is not None else (lambda s: spe_rhs(s, dealias))
    half = 0.5 * dt
    k1 = f(state)
    k2 = f(SpectralState(state.u + half * k1, state.x_max, state.t + half))
    k3 = f(SpectralState(state.u + half * k2, state.x_max, state.t + half))
    k4 = f(SpectralState(state.u + dt * k3, state.x_max, state.t + dt))
    return state.advanced(state.u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), dt)


def remove_mean(u: ArrayLike) -> FloatArray:
    """
    Subtract a small mean from initial data once.

    Raises:
        NonZeroMean: the mean exceeds ``settings.spectral.demean_limit`` (relative to max(1, max|u|)).
    """
    arr = np.asarray(u, dtype=np.float64)
    cfg = settings.spectral
    mean = float(np.mean(arr))
    scale = max(1.0, float(np.max(np.abs(arr), initial=0.0)))
    if abs(mean) <= cfg.zero_mean_tol * scale:
        return arr
    if abs(mean) > cfg.demean_limit * scale:
        raise NonZeroMean("initial data mean is too large to remove", mean=mean, limit=cfg.demean_limit * scale)
    log.warning("initial_data_demeaned", mean=mean)
    return arr - mean


def simulate_spectral(
    grid: GridSpec,
    u0: ArrayLike,
    snapshot_times: Iterable[int],
    *,
    dealias: bool | None = None,
) -> tuple[list[FieldSnapshot], RunReport]:
    """
    Fixed-step RK4 run on the periodic domain [0, x_max).

    Args:
        grid: ``n_x`` is the number of periodic points (power of two), ``dt`` and
            ``n_t`` the time stepping.
        u0: Initial field at x_k = k dx, k = 0..n_x-1.
        snapshot_times: Step indices j to record.
        dealias: 2/3-rule toggle (defaults to ``settings.spectral.dealias``).

    Returns:
        (snapshots ordered by time, RunReport).

    Raises:
        BadLength: n_x is not a power of two or u0 has the wrong length.
        NonZeroMean: initial data has a mean above the de-meaning limit.
        InstabilityDetected: max|u| grew past the blow-up guard or became non-finite.
    """
    cfg = settings.spectral
    dealias = cfg.dealias if dealias is None else dealias
    if not _is_power_of_two(grid.n_x):
        raise BadLength("spectral point count must be a power of two", n=grid.n_x)
    u_init = _checked(u0)
    if u_init.size != grid.n_x:
        raise BadLength("initial data length must equal the periodic point count", expected=grid.n_x, got=u_init.size)

    rows = sorted(set(int(j) for j in snapshot_times))
    if any(not 0 <= j <= grid.n_t for j in rows):
        raise InvalidValue("snapshot_times", f"step indices must lie in 0..{grid.n_t}")
    monitor_rows = set(rows) | {0, grid.n_t}

    state = SpectralState(u=remove_mean(u_init), x_max=grid.x_max)
    peak0 = float(np.max(np.abs(state.u)))
    limit = cfg.blowup_factor * peak0

    snapshots: list[FieldSnapshot] = []
    invariant: dict[float, float] = {}

    def record(j: int, s: SpectralState) -> None:
        t = j * grid.dt
        if j in monitor_rows:
            invariant[t] = float(np.sum(s.u * s.u) * grid.dx)
        if j in rows:
            snapshots.append(FieldSnapshot(t=t, u=s.u))

    log.info("simulation_started", scheme=Scheme.PSEUDOSPECTRAL.value, dealias=dealias, **grid.as_dict())
    start = time.perf_counter()
    record(0, state)
    for j in range(1, grid.n_t + 1):
        state = rk4_step(state, grid.dt, dealias=dealias)
        peak = float(np.max(np.abs(state.u)))
        if not np.isfinite(peak) or (peak0 > 0.0 and peak > limit):
            log.error("spectral_blowup", step=j, peak=peak, initial_peak=peak0)
            raise InstabilityDetected("spectral solution blew up", step=j, t=j * grid.dt, peak=peak, limit=limit)
        record(j, state)
    wall = time.perf_counter() - start

    report = RunReport(
        scheme=Scheme.PSEUDOSPECTRAL,
        grid=grid,
        wall_seconds=wall,
        invariant_drift={"quadratic_invariant": relative_drift(invariant)},
        monitors={"quadratic_invariant": invariant},
        metadata={"dealias": dealias},
    )
    log.info("simulation_complete", wall_seconds=round(wall, 3), snapshots=len(snapshots))
    return snapshots, report


__all__ = [
    "SpectralState",
    "remove_mean",
    "rk4_step",
    "simulate_spectral",
    "spe_rhs",
    "spectral_dx",
    "spectral_dx_inv",
]
