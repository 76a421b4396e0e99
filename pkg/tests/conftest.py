"""Pytest configuration for polysymplectic_spe tests."""

from __future__ import annotations

import numpy as np
import pytest

from polysymplectic_spe.model.grid import GridSpec
from polysymplectic_spe.solutions.sakovich import SolitonParams


# Environment overrides from a developer's .env must not leak into the numbers under test.
_SETTING_PREFIXES = ("SCHEME_", "SPECTRAL_", "BENCH_")


@pytest.fixture(autouse=True)
def _clean_settings_env(monkeypatch: pytest.MonkeyPatch) -> None:
    import os

    for key in list(os.environ):
        if key.startswith(_SETTING_PREFIXES):
            monkeypatch.delenv(key, raising=False)


@pytest.fixture()
def rng() -> np.random.Generator:
    """Seeded generator; every randomized test is reproducible."""
    return np.random.default_rng(12345)


@pytest.fixture()
def soliton() -> SolitonParams:
    return SolitonParams(0.2)


@pytest.fixture()
def small_grid() -> GridSpec:
    """40 x 2 domain, coarse enough for per-test marching runs."""
    return GridSpec(x_max=40.0, n_x=200, dt=0.05, n_t=40)
