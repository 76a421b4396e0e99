"""Unit tests for the initial row and the right-boundary column."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from polysymplectic_spe.errors import InvalidValue, LengthMismatch, RightBoundaryNotVanishing
from polysymplectic_spe.model.data import boundary_column, initial_row
from polysymplectic_spe.model.dw import dw_hamiltonian
from polysymplectic_spe.model.grid import DWTriple, GridSpec


class TestGridSpec:
    def test_dx_is_derived(self) -> None:
        grid = GridSpec(x_max=100.0, n_x=2048, dt=0.01, n_t=500)
        assert grid.dx == 100.0 / 2048
        assert grid.t_final == pytest.approx(5.0)
        assert grid.x_points()[-1] == pytest.approx(100.0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"x_max": 0.0, "n_x": 4, "dt": 0.1, "n_t": 1},
            {"x_max": 1.0, "n_x": 0, "dt": 0.1, "n_t": 1},
            {"x_max": 1.0, "n_x": 1, "dt": 0.1, "n_t": 1},
            {"x_max": 1.0, "n_x": 4, "dt": -0.1, "n_t": 1},
            {"x_max": 1.0, "n_x": 4, "dt": 0.1, "n_t": 0},
        ],
    )
    def test_invalid_grids_rejected(self, kwargs: dict[str, float]) -> None:
        with pytest.raises(InvalidValue):
            GridSpec(**kwargs)  # type: ignore[arg-type]

    def test_from_steps_requires_multiples(self) -> None:
        assert GridSpec.from_steps(1.0, 0.25, 0.1, 1.0).n_x == 4
        with pytest.raises(InvalidValue):
            GridSpec.from_steps(1.0, 0.3, 0.1, 1.0)

    def test_time_index_snaps_and_clamps(self) -> None:
        grid = GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=10)
        assert grid.time_index(0.52) == 5
        assert grid.time_index(7.0) == 10
        assert grid.time_index(-1.0) == 0


class TestInitialRow:
    """p_t = u0 / 2 and phi the leftward trapezoidal antiderivative with phi(x_max) = 0."""

    def test_zero_data(self) -> None:
        grid = GridSpec(x_max=1.0, n_x=8, dt=0.1, n_t=1)
        p_t, phi = initial_row(np.zeros(9), grid)
        assert not p_t.any()
        assert not phi.any()

    def test_two_intervals(self) -> None:
        grid = GridSpec(x_max=2.0, n_x=2, dt=1.0, n_t=1)
        p_t, phi = initial_row([2.0, 0.0, 0.0], grid)
        np.testing.assert_array_equal(p_t, [1.0, 0.0, 0.0])
        np.testing.assert_array_equal(phi, [-1.0, 0.0, 0.0])

    @settings(max_examples=50)
    @given(arrays(np.float64, 17, elements=st.floats(min_value=-1.0, max_value=1.0)))
    def test_trapezoid_identity(self, values: np.ndarray) -> None:
        """(phi[i+1] - phi[i]) / dx equals the interval mean of u0."""
        u0 = values.copy()
        u0[-1] = 0.0
        grid = GridSpec(x_max=2.0, n_x=16, dt=0.1, n_t=1)
        _, phi = initial_row(u0, grid)
        slope = np.diff(phi) / grid.dx
        np.testing.assert_allclose(slope, 0.5 * (u0[:-1] + u0[1:]), atol=1e-12)
        assert phi[-1] == 0.0

    def test_length_mismatch(self) -> None:
        grid = GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=1)
        with pytest.raises(LengthMismatch):
            initial_row(np.zeros(4), grid)

    def test_pulse_at_right_boundary_rejected(self) -> None:
        grid = GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=1)
        with pytest.raises(RightBoundaryNotVanishing):
            initial_row([0.0, 0.0, 0.5, 1.0, 1.0], grid)

    def test_boundary_tolerance_override(self) -> None:
        grid = GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=1)
        p_t, _ = initial_row([0.0, 0.0, 1.0, 0.5, 1e-3], grid, boundary_tol=1e-2)
        assert p_t[-1] == pytest.approx(5e-4)


class TestBoundaryColumn:
    @pytest.mark.parametrize("n_t", [1, 5])
    def test_shapes_and_zeros(self, n_t: int) -> None:
        column = boundary_column(GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=n_t))
        assert (column.p_t.size, column.phi.size, column.s_x.size) == (n_t + 1, n_t + 1, n_t)
        assert column.i == 4
        assert not (column.p_t.any() or column.phi.any() or column.s_x.any())

    def test_hamiltonian_vanishes_on_boundary(self) -> None:
        column = boundary_column(GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=3))
        for j in range(column.n_t):
            z = DWTriple(float(column.phi[j]), 0.5 * float(column.s_x[j]), float(column.p_t[j]))
            assert dw_hamiltonian(z) == 0.0

    def test_column_arrays_are_read_only(self) -> None:
        column = boundary_column(GridSpec(x_max=1.0, n_x=4, dt=0.1, n_t=3))
        with pytest.raises(ValueError):
            column.p_t[0] = 1.0
