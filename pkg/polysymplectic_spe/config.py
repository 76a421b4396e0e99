"""
Configuration management for the polysymplectic SPE toolkit.

Uses Pydantic Settings for validation and environment variable loading.
Numerical tolerances and harness knobs can be overridden per process, e.g.

    SCHEME_NEWTON_TOL=1e-14 spe-run verify
    BENCH_MAX_WORKERS=4 spe-run convergence --config run.cfg
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SchemeConfig(BaseSettings):
    """Polysymplectic marching scheme tolerances."""

    model_config = SettingsConfigDict(env_prefix="SCHEME_")

    # Newton oracle on the raw midpoint equations
    newton_tol: float = Field(1e-13, description="Oracle convergence threshold (relative to cell scale)")
    newton_max_iter: int = Field(100, description="Max Newton iterations per cell")
    newton_max_halvings: int = Field(40, description="Max step halvings per Newton iteration")

    residual_tol: float = Field(1e-12, description="Accepted midpoint-equation residual (relative to cell scale)")
    boundary_tol: float = Field(1e-6, description="Right-boundary |u0| tolerance relative to max|u0|")
    oracle_agreement_tol: float = Field(1e-10, description="Closed-form vs Newton oracle agreement")


class SpectralConfig(BaseSettings):
    """Pseudo-spectral baseline configuration."""

    model_config = SettingsConfigDict(env_prefix="SPECTRAL_")

    zero_mean_tol: float = Field(1e-10, description="Zero-mean tolerance relative to max(1, max|u|)")
    demean_limit: float = Field(1e-6, description="Initial data mean above this is rejected, below is removed")
    blowup_factor: float = Field(1e3, description="InstabilityDetected once max|u| exceeds this times the initial max")
    dealias: bool = Field(False, description="Apply the 2/3 rule to the cubic term")


class BenchConfig(BaseSettings):
    """Diagnostics and benchmark harness configuration."""

    model_config = SettingsConfigDict(env_prefix="BENCH_")

    timing_repeats: int = Field(3, description="Repetitions per timed run (median is reported)")
    max_workers: int = Field(1, description="Concurrent study levels (1 keeps timings serialized)")
    fallback_refinement: int = Field(8, description="Step refinement of the spectral fallback reference")
    certification_min_order: float = Field(2.0, description="Minimum PDE-residual order to accept the exact soliton")


class Settings(BaseSettings):
    """Root settings aggregating all configs."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Sub-configs (loaded on access)
    @property
    def scheme(self) -> SchemeConfig:
        """Return scheme configuration loaded from environment."""
        return SchemeConfig()

    @property
    def spectral(self) -> SpectralConfig:
        """Return spectral configuration loaded from environment."""
        return SpectralConfig()

    @property
    def bench(self) -> BenchConfig:
        """Return benchmark configuration loaded from environment."""
        return BenchConfig()


# Global settings instance
settings = Settings()


def validate_settings() -> list[str]:
    """
    Validates the numerical settings.

    Returns list of problems (empty when everything is usable).
    """
    errors = []

    scheme = settings.scheme
    if scheme.newton_tol <= 0 or scheme.residual_tol <= 0:
        errors.append("SCHEME_NEWTON_TOL and SCHEME_RESIDUAL_TOL must be positive")
    if scheme.newton_max_iter < 1:
        errors.append("SCHEME_NEWTON_MAX_ITER must be at least 1")
    if scheme.boundary_tol < 0:
        errors.append("SCHEME_BOUNDARY_TOL must be non-negative")

    spectral = settings.spectral
    if spectral.zero_mean_tol <= 0 or spectral.blowup_factor <= 1:
        errors.append("SPECTRAL_ZERO_MEAN_TOL must be positive and SPECTRAL_BLOWUP_FACTOR above 1")

    bench = settings.bench
    if bench.timing_repeats < 1 or bench.max_workers < 1:
        errors.append("BENCH_TIMING_REPEATS and BENCH_MAX_WORKERS must be at least 1")

    return errors
