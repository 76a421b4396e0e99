"""Domain types shared by the scheme, the references and the diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from polysymplectic_spe.errors import InvalidValue, ShapeMismatch


FloatArray = NDArray[np.float64]


def _frozen_array(values: ArrayLike) -> FloatArray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GridSpec:
    """
    Space/time discretization of the marching domain.

    Grid points are x_i = i*dx for i = 0..n_x and t_j = j*dt for j = 0..n_t.
    ``dx`` is derived once from ``x_max / n_x`` and never recomputed.
    """

    x_max: float
    n_x: int
    dt: float
    n_t: int
    dx: float = field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_max) and self.x_max > 0):
            raise InvalidValue("x_max", "must be positive")
        if self.n_x < 2:
            raise InvalidValue("n_x", "must be at least 2")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidValue("dt", "must be positive")
        if self.n_t < 1:
            raise InvalidValue("n_t", "must be at least 1")
        object.__setattr__(self, "dx", self.x_max / self.n_x)

    @classmethod
    def from_steps(cls, x_max: float, dx: float, dt: float, t_final: float) -> GridSpec:
        """Build a grid from step sizes; extents must be integer multiples of the steps."""
        n_x = round(x_max / dx)
        n_t = round(t_final / dt)
        if n_x < 2 or abs(n_x * dx - x_max) > 1e-9 * x_max:
            raise InvalidValue("dx", f"x_max={x_max} is not a multiple of dx={dx}")
        if n_t < 1 or abs(n_t * dt - t_final) > 1e-9 * t_final:
            raise InvalidValue("dt", f"t_final={t_final} is not a multiple of dt={dt}")
        return cls(x_max=x_max, n_x=n_x, dt=dt, n_t=n_t)

    @property
    def t_final(self) -> float:
        return self.n_t * self.dt

    def x_points(self) -> FloatArray:
        """Grid abscissae x_0..x_{n_x}."""
        return np.arange(self.n_x + 1, dtype=np.float64) * self.dx

    def time_index(self, t: float) -> int:
        """Nearest time row to physical time ``t`` (clamped to the grid)."""
        return min(max(round(t / self.dt), 0), self.n_t)

    def as_dict(self) -> dict[str, float | int]:
        return {"x_max": self.x_max, "n_x": self.n_x, "dx": self.dx, "dt": self.dt, "n_t": self.n_t}


@dataclass(frozen=True)
class DWTriple:
    """De Donder-Weyl variables (phi, p_x, p_t) at one point, or a variation of them."""

    phi: float
    p_x: float
    p_t: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.phi, self.p_x, self.p_t)):
            raise InvalidValue("DWTriple", f"non-finite entry in {self}")

    def as_vector(self) -> FloatArray:
        """Ordering Z = (phi, p_x, p_t) used by the beta-matrices."""
        return np.array([self.phi, self.p_x, self.p_t], dtype=np.float64)


@dataclass(frozen=True)
class _ColumnData:
    """Arrays of one spatial column: p_t and phi on rows j = 0..n_t, pair-sums s_x on intervals."""

    i: int
    p_t: FloatArray
    phi: FloatArray
    s_x: FloatArray

    def __post_init__(self) -> None:
        p_t, phi, s_x = _frozen_array(self.p_t), _frozen_array(self.phi), _frozen_array(self.s_x)
        if p_t.ndim != 1 or p_t.shape != phi.shape or s_x.shape != (p_t.size - 1,):
            raise ShapeMismatch(
                "column arrays must satisfy |p_t| = |phi| = |s_x| + 1",
                i=self.i,
                p_t=p_t.shape,
                phi=phi.shape,
                s_x=s_x.shape,
            )
        object.__setattr__(self, "p_t", p_t)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "s_x", s_x)

    @property
    def n_t(self) -> int:
        return self.p_t.size - 1

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.p_t).all() and np.isfinite(self.phi).all() and np.isfinite(self.s_x).all())


@dataclass(frozen=True)
class DWColumn(_ColumnData):
    """
    Marching state at spatial index ``i``.

    Individual p_x values are never needed by the scheme: ``s_x[j]`` stores the
    pair-sum p_x[i, j] + p_x[i, j+1] of time interval j.
    """


@dataclass(frozen=True)
class TangentColumn(_ColumnData):
    """Variations (dp_t, dphi, ds) of a DWColumn, propagated by the linearized scheme."""


@dataclass(frozen=True)
class ColumnTrace:
    """
    Every column of a run stacked by spatial index.

    Arrays are indexed [i, j]: p_t and phi have shape (n_x + 1, n_t + 1),
    s_x has shape (n_x + 1, n_t).
    """

    p_t: FloatArray
    phi: FloatArray
    s_x: FloatArray

    def __post_init__(self) -> None:
        p_t, phi, s_x = _frozen_array(self.p_t), _frozen_array(self.phi), _frozen_array(self.s_x)
        if p_t.ndim != 2 or p_t.shape != phi.shape or s_x.shape != (p_t.shape[0], p_t.shape[1] - 1):
            raise ShapeMismatch("trace arrays have inconsistent shapes", p_t=p_t.shape, phi=phi.shape, s_x=s_x.shape)
        object.__setattr__(self, "p_t", p_t)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "s_x", s_x)

    @classmethod
    def from_columns(cls, columns: list[_ColumnData]) -> ColumnTrace:
        """Stack columns; they may arrive in any order and are sorted by ``i``."""
        ordered = sorted(columns, key=lambda col: col.i)
        return cls(
            p_t=np.stack([col.p_t for col in ordered]),
            phi=np.stack([col.phi for col in ordered]),
            s_x=np.stack([col.s_x for col in ordered]),
        )

    @property
    def shape(self) -> tuple[int, int]:
        """(n_x + 1, n_t + 1)."""
        return self.p_t.shape  # type: ignore[return-value]

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.p_t)), np.max(np.abs(self.phi)), np.max(np.abs(self.s_x), initial=0.0)))


@dataclass(frozen=True)
class FieldSnapshot:
    """Physical field u over i = 0..n_x at time ``t``."""

    t: float
    u: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _frozen_array(self.u))

    def __len__(self) -> int:
        return int(self.u.size)


__all__ = [
    "ColumnTrace",
    "DWColumn",
    "DWTriple",
    "FieldSnapshot",
    "FloatArray",
    "GridSpec",
    "TangentColumn",
]
