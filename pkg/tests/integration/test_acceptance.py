"""
Desk-scale acceptance runs.

These march full soliton problems and take from seconds to a few minutes;
deselect with ``pytest -m "not slow"``.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from polysymplectic_spe.flows.comparison import compare_schemes
from polysymplectic_spe.flows.convergence import StudyConfig, convergence_study, decreases_to_floor, dt_sweep, richardson_levels
from polysymplectic_spe.flows.reference import InitialCondition, initial_field
from polysymplectic_spe.flows.verification import check_conservation_law
from polysymplectic_spe.metrics import msl_residual
from polysymplectic_spe.model.grid import ColumnTrace, GridSpec
from polysymplectic_spe.reports import RunReport, Scheme
from polysymplectic_spe.scheme.marching import TangentSeed, simulate, simulate_trace
from polysymplectic_spe.solutions.sakovich import SolitonParams, certify_soliton
from polysymplectic_spe.spectral.solver import simulate_spectral


pytestmark = pytest.mark.slow

SOLITON = SolitonParams(0.2)


def _soliton_study(scheme: Scheme = Scheme.POLYSYMPLECTIC, t_final: float = 1.0) -> StudyConfig:
    return StudyConfig(
        scheme=scheme,
        params=SOLITON,
        t_final=t_final,
        x_max=100.0,
        x_center=25.0,
        initial=InitialCondition.SAKOVICH,
        timing_repeats=1,
    )


# ===================================================================
# Desk-scale run
# ===================================================================


class TestDeskRun:
    """m = 0.2 on [0, 100] with 2048 columns and dt = 0.01 to t = 5."""

    def test_cell_residuals_at_round_off(self) -> None:
        grid = GridSpec(x_max=100.0, n_x=2048, dt=0.01, n_t=500)
        u0 = initial_field(InitialCondition.SAKOVICH, SOLITON, grid, x_center=25.0)
        _, report = simulate(grid, u0, [grid.n_t], check_residuals=True)
        assert report.max_cell_residual < 1e-12

    @pytest.fixture(scope="class")
    def centred_runs(self) -> dict[int, RunReport]:
        """Pulse mid-domain: up to t = 5 its tail at either end stays near 1e-4 of the peak."""
        out = {}
        for n_x, dt, n_t in ((2048, 0.01, 500), (1024, 0.02, 250)):
            grid = GridSpec(x_max=100.0, n_x=n_x, dt=dt, n_t=n_t)
            u0 = initial_field(InitialCondition.SAKOVICH, SOLITON, grid, x_center=50.0)
            out[n_x] = simulate(grid, u0, [n_t], boundary_tol=1e-3)[1]
        return out

    def test_quadratic_drift_shrinks_with_steps(self, centred_runs: dict[int, RunReport]) -> None:
        """Halving both steps cuts the drift by at least a second-order factor; runs show about 15."""
        coarse = centred_runs[1024].invariant_drift["quadratic_invariant"]
        fine = centred_runs[2048].invariant_drift["quadratic_invariant"]
        assert coarse / fine >= 3.0


# ===================================================================
# Convergence
# ===================================================================


class TestSecondOrder:
    def test_richardson_study(self) -> None:
        table = convergence_study(_soliton_study(), richardson_levels(0.1, 0.05, 3))
        assert all(r.ok for r in table.rows)
        orders = table.orders()
        assert len(orders) == 2
        for order in orders:
            assert order == pytest.approx(2.0, abs=0.3)

    def test_dt_sweep_reaches_dx_floor(self) -> None:
        tables = dt_sweep(_soliton_study(), [0.4, 0.2], [0.2, 0.1, 0.05, 0.025])
        assert len(tables) == 2
        for table in tables:
            assert all(r.ok for r in table.rows)
            assert decreases_to_floor(table)


class TestGroundTruth:
    def test_soliton_certified(self) -> None:
        cert = certify_soliton(SOLITON)
        assert cert.passed
        assert cert.observed_order >= 2.0


class TestConservationLaw:
    @pytest.mark.parametrize("seed", [0, 11])
    def test_propagated_tangents(self, seed: int) -> None:
        results = {r.name: r for r in check_conservation_law(seed)}
        assert all(r.passed for r in results.values()), {n: r.value for n, r in results.items()}

    def test_desk_run_tangents(self) -> None:
        """Two independently seeded tangent pairs along the full desk-scale run."""
        grid = GridSpec(x_max=100.0, n_x=2048, dt=0.01, n_t=500)
        u0 = initial_field(InitialCondition.SAKOVICH, SOLITON, grid, x_center=25.0)
        seeds = [TangentSeed.random(grid, rng) for rng in map(np.random.default_rng, (0, 11)) for _ in range(2)]
        trace = simulate_trace(grid, u0, seeds)
        for a, b in ((0, 1), (2, 3)):
            assert msl_residual(trace.base, trace.tangents[a], trace.tangents[b], grid) < 1e-12
        # the first pair with its columns scrambled is no longer a solution of the linearized scheme
        shuffled = np.random.default_rng(5).permutation(grid.n_x + 1)
        v = trace.tangents[0]
        scrambled = ColumnTrace(p_t=v.p_t[shuffled], phi=v.phi[shuffled], s_x=v.s_x[shuffled])
        assert msl_residual(trace.base, scrambled, trace.tangents[1], grid) > 1e-6


# ===================================================================
# Baseline
# ===================================================================


class TestSpectralOrder:
    def test_rk4_temporal_order(self) -> None:
        n, x_max, t_final = 64, 2.0 * math.pi, 1.0
        x = np.arange(n) * x_max / n
        u0 = 0.3 * np.sin(x) + 0.1 * np.cos(2.0 * x)

        def final(dt: float) -> np.ndarray:
            n_t = round(t_final / dt)
            grid = GridSpec(x_max=x_max, n_x=n, dt=dt, n_t=n_t)
            return simulate_spectral(grid, u0, [n_t])[0][-1].u

        reference = final(0.0125)
        e1 = np.sqrt(np.mean((final(0.1) - reference) ** 2))
        e2 = np.sqrt(np.mean((final(0.05) - reference) ** 2))
        assert math.log2(e1 / e2) == pytest.approx(4.0, abs=0.3)


class TestComparison:
    def test_head_to_head(self) -> None:
        report = compare_schemes(
            _soliton_study(t_final=0.5),
            polysymplectic_steps=(100.0 / 1024, 0.01),
            spectral_steps=(100.0 / 1024, 0.01),
        )
        assert [r.scheme for r in report.rows] == [Scheme.POLYSYMPLECTIC, Scheme.PSEUDOSPECTRAL]
        for row in report.rows:
            assert math.isfinite(row.sigma_final)
            assert row.wall_seconds > 0
        assert report.precision_ratio() is not None
        assert report.speed_ratio() is not None
