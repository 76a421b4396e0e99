"""
Run configuration files.

Format: UTF-8 text, one ``key = value`` per line, ``#`` starts a comment,
list values are comma separated. Example:

    # desk-scale soliton run
    scheme = polysymplectic
    x_max = 100
    n_x = 2048
    dt = 0.01
    t_final = 5
    soliton_m = 0.2
    x_center = 25
    snapshot_times = 0, 2.5, 5
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from polysymplectic_spe.errors import InvalidValue, IoError, MissingKey, UnknownKey
from polysymplectic_spe.flows.reference import InitialCondition
from polysymplectic_spe.model.grid import GridSpec
from polysymplectic_spe.reports import Scheme


log = structlog.get_logger()

_LIST_KEYS = {"snapshot_times"}


class SimConfig(BaseModel):
    """Validated run configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    scheme: Scheme = Scheme.POLYSYMPLECTIC
    x_max: float
    n_x: int
    dt: float
    t_final: float
    soliton_m: float = Field(0.2, description="Soliton shape parameter, 0 < m < sin(pi/8) for a smooth pulse")
    x_center: float | None = Field(None, description="Pulse position at t = 0 (default x_max / 2)")
    initial: InitialCondition = InitialCondition.SAKOVICH
    snapshot_times: list[float] | None = Field(None, description="Physical times to record (default [t_final])")
    output_dir: str = "output"
    seed: int = 0
    dealias: bool = False
    boundary_tol: float = Field(1e-6, description="Right-boundary |u0| tolerance relative to max|u0|")
    levels: int = Field(3, description="Refinement levels of a convergence study")
    spectral_n_x: int | None = Field(None, description="Periodic points of the baseline in 'compare' (default: next power of two >= n_x)")
    spectral_dt: float | None = Field(None, description="Baseline time step in 'compare' (default dt)")

    @field_validator("x_max", "dt", "t_final", "spectral_dt")
    @classmethod
    def _positive(cls, v: float | None) -> float | None:
        if v is not None and not (math.isfinite(v) and v > 0):
            raise ValueError("must be positive")
        return v

    @field_validator("n_x")
    @classmethod
    def _enough_cells(cls, v: int) -> int:
        if v < 2:
            raise ValueError("must be at least 2")
        return v

    @field_validator("soliton_m")
    @classmethod
    def _shape_parameter(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("must lie strictly between 0 and 1")
        return v

    @field_validator("levels")
    @classmethod
    def _levels(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("boundary_tol")
    @classmethod
    def _tolerance(cls, v: float) -> float:
        if not v >= 0:
            raise ValueError("must be non-negative")
        return v

    # -------------------------------------------------------------------------

    @property
    def times(self) -> list[float]:
        return list(self.snapshot_times) if self.snapshot_times is not None else [self.t_final]

    @property
    def n_t(self) -> int:
        return round(self.t_final / self.dt)

    def check(self) -> SimConfig:
        """Cross-field constraints; returns self."""
        if self.n_t < 1 or abs(self.n_t * self.dt - self.t_final) > 1e-9 * self.t_final:
            raise InvalidValue("t_final", f"must be a positive multiple of dt={self.dt}")
        bad = [t for t in self.times if not 0.0 <= t <= self.t_final]
        if bad:
            raise InvalidValue("snapshot_times", f"{bad} outside [0, t_final]")
        if self.scheme is Scheme.PSEUDOSPECTRAL and self.n_x & (self.n_x - 1):
            raise InvalidValue("n_x", "must be a power of two for the pseudospectral scheme")
        if self.spectral_n_x is not None and (self.spectral_n_x < 2 or self.spectral_n_x & (self.spectral_n_x - 1)):
            raise InvalidValue("spectral_n_x", "must be a power of two")
        return self

    def grid(self) -> GridSpec:
        return GridSpec(x_max=self.x_max, n_x=self.n_x, dt=self.dt, n_t=self.n_t)

    def snapshot_indices(self, grid: GridSpec | None = None) -> list[int]:
        """Snap the requested times to time rows, logging every mapping."""
        g = grid or self.grid()
        rows = []
        for t in self.times:
            j = g.time_index(t)
            log.info("snapshot_time_snapped", requested=t, j=j, t=j * g.dt)
            rows.append(j)
        return sorted(set(rows))


def _split(text: str) -> dict[str, Any]:
    raw: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise InvalidValue(f"line {lineno}", "expected key = value")
        key, value = (part.strip() for part in content.split("=", 1))
        key = key.lower()
        if key in raw:
            raise InvalidValue(key, "duplicate key")
        if key in _LIST_KEYS:
            raw[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            raw[key] = value
    return raw


def parse_config(text: str) -> SimConfig:
    """
    Parse and validate a configuration file's text.

    Raises:
        UnknownKey: a key outside the schema.
        MissingKey: a required key is absent.
        InvalidValue: a value fails validation.
    """
    raw = _split(text)
    fields = SimConfig.model_fields
    for key in raw:
        if key not in fields:
            raise UnknownKey(key)
    for name, info in fields.items():
        if info.is_required() and name not in raw:
            raise MissingKey(name)

    try:
        config = SimConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        name = str(first["loc"][0]) if first["loc"] else "config"
        reason = str(first["msg"]).removeprefix("Value error, ")
        raise InvalidValue(name, reason) from e
    return config.check()


def load_config(path: str | Path) -> SimConfig:
    """Read and parse a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot read config file: {e}", path=str(path)) from e
    return parse_config(text)


__all__ = ["SimConfig", "load_config", "parse_config"]
