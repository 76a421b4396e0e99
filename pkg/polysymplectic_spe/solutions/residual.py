"""Finite-difference residual of the short pulse equation on a space-time patch."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from polysymplectic_spe.errors import PatchTooSmall
from polysymplectic_spe.model.grid import FloatArray


_MIN_POINTS = 5


def _d1(f: FloatArray, h: float, axis: int) -> FloatArray:
    """Fourth-order central first derivative on indices 2..n-3 along ``axis``."""
    f = np.moveaxis(f, axis, 0)
    d = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    return np.moveaxis(d, 0, axis)


def _d2(f: FloatArray, h: float, axis: int) -> FloatArray:
    """Fourth-order central second derivative on indices 2..n-3 along ``axis``."""
    f = np.moveaxis(f, axis, 0)
    d = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)
    return np.moveaxis(d, 0, axis)


def pde_residual(u_patch: ArrayLike, dx: float, dt: float) -> float:
    """
    Max-norm of u_xt - u - (u**3)_xx / 6 over the interior of a patch.

    Args:
        u_patch: Samples with shape (n_t, n_x): axis 0 is time, axis 1 is space.
        dx: Spatial sampling step.
        dt: Temporal sampling step.

    Returns:
        Largest absolute residual over rows and columns 2..n-3.

    Raises:
        PatchTooSmall: fewer than 5 samples along either axis.
    """
    u = np.asarray(u_patch, dtype=np.float64)
    if u.ndim != 2 or min(u.shape) < _MIN_POINTS:
        raise PatchTooSmall("patch needs at least 5x5 samples", shape=u.shape)

    u_xt = _d1(_d1(u, dx, axis=1), dt, axis=0)
    cube_xx = _d2(u**3, dx, axis=1)[2:-2]
    inner = u[2:-2, 2:-2]
    residual = u_xt - inner - cube_xx / 6.0
    return float(np.max(np.abs(residual)))


__all__ = ["pde_residual"]
