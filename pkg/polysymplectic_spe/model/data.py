"""Initial row and right-boundary column of the space-marching problem."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import LengthMismatch, RightBoundaryNotVanishing
from polysymplectic_spe.model.grid import DWColumn, FloatArray, GridSpec


def initial_row(u0: ArrayLike, grid: GridSpec, boundary_tol: float | None = None) -> tuple[FloatArray, FloatArray]:
    """
    Polysymplectic data on the row t = 0.

    p_t = u0 / 2, and phi is the cumulative trapezoidal antiderivative of u0
    integrated leftward from the right boundary, in the gauge phi(x_max) = 0.

    Args:
        u0: Field values at i = 0..n_x.
        grid: Marching grid.
        boundary_tol: |u0[n_x]| tolerance relative to max|u0|
            (defaults to ``settings.scheme.boundary_tol``).

    Returns:
        (p_t_row, phi_row), both of length n_x + 1.

    Raises:
        LengthMismatch: u0 does not have n_x + 1 entries.
        RightBoundaryNotVanishing: the pulse reaches the right boundary.
    """
    u = np.asarray(u0, dtype=np.float64)
    if u.shape != (grid.n_x + 1,):
        raise LengthMismatch("initial data length must be n_x + 1", expected=grid.n_x + 1, got=u.shape)

    tol = settings.scheme.boundary_tol if boundary_tol is None else boundary_tol
    peak = float(np.max(np.abs(u)))
    if abs(u[-1]) > tol * peak:
        raise RightBoundaryNotVanishing(
            "initial data must vanish at the right boundary",
            u_right=float(u[-1]),
            peak=peak,
            tolerance=tol,
        )

    increments = 0.5 * grid.dx * (u[:-1] + u[1:])
    phi = np.zeros_like(u)
    phi[:-1] = -np.cumsum(increments[::-1])[::-1]
    return 0.5 * u, phi


def boundary_column(grid: GridSpec) -> DWColumn:
    """All-zero column at i = n_x: p_t = phi = pair-sums = 0 for every row."""
    return DWColumn(
        i=grid.n_x,
        p_t=np.zeros(grid.n_t + 1),
        phi=np.zeros(grid.n_t + 1),
        s_x=np.zeros(grid.n_t),
    )


__all__ = ["boundary_column", "initial_row"]
