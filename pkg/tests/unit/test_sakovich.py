"""Unit tests for the exact soliton and its residual certification."""

from __future__ import annotations

import math

import numpy as np
import pytest

from polysymplectic_spe.errors import InvalidValue, NonInvertibleParametrization, RightBoundaryNotVanishing
from polysymplectic_spe.model.grid import GridSpec
from polysymplectic_spe.solutions.sakovich import (
    SMOOTH_LIMIT,
    Certification,
    SolitonParams,
    certify_soliton,
    invert_parametrization,
    refinement_orders,
    sakovich_field,
    sakovich_half_period,
    sakovich_parametric,
    sakovich_profile,
    sakovich_u,
)


class TestSolitonParams:
    @pytest.mark.parametrize("m", [0.0, 1.0, -0.1, float("nan")])
    def test_out_of_range_rejected(self, m: float) -> None:
        with pytest.raises(InvalidValue):
            SolitonParams(m)

    def test_smooth_regime(self) -> None:
        assert SolitonParams(0.2).is_smooth
        assert not SolitonParams(0.5).is_smooth
        assert SMOOTH_LIMIT == pytest.approx(math.sin(math.pi / 8))
        assert SolitonParams(0.6).n == pytest.approx(0.8)


class TestProfile:
    """Field values of the transcribed solution."""

    def test_peak_value(self, soliton: SolitonParams) -> None:
        """At y = t = 0 the pulse peaks at u = 4 m."""
        assert sakovich_u(soliton, 0.0, 0.0) == pytest.approx(4.0 * soliton.m, rel=1e-12)

    @pytest.mark.parametrize("x", [-150.0, 150.0])
    def test_far_field_vanishes(self, soliton: SolitonParams, x: float) -> None:
        assert abs(sakovich_u(soliton, x, 0.0)) < 1e-8

    def test_parametric_form_has_no_overflow(self, soliton: SolitonParams) -> None:
        x, u = sakovich_parametric(soliton, 1e5, 0.0)
        assert math.isfinite(x)
        assert u == pytest.approx(0.0, abs=1e-300)

    def test_inversion_accuracy(self, soliton: SolitonParams) -> None:
        for x in np.linspace(-10.0, 10.0, 41):
            for t in (0.0, 0.7, 3.0):
                y = invert_parametrization(soliton, float(x), t)
                assert sakovich_parametric(soliton, y, t)[0] == pytest.approx(x, abs=1e-10)

    def test_centre_offset_shifts_profile(self, soliton: SolitonParams) -> None:
        assert sakovich_u(soliton, 25.3, 0.4, x_center=25.0) == pytest.approx(sakovich_u(soliton, 0.3, 0.4), abs=1e-12)

    def test_field_preserves_shape(self, soliton: SolitonParams) -> None:
        x = np.linspace(-5.0, 5.0, 12).reshape(3, 4)
        assert sakovich_field(soliton, x, 0.0).shape == (3, 4)

    def test_half_period_symmetry(self, soliton: SolitonParams) -> None:
        """u(x - tau, t + tau) = -u(x, t) under the exact flow."""
        tau = sakovich_half_period(soliton)
        assert tau == pytest.approx(math.pi / (2.0 * soliton.n))
        for x in np.linspace(-6.0, 6.0, 13):
            shifted = sakovich_u(soliton, float(x) - tau, 0.3 + tau)
            assert shifted == pytest.approx(-sakovich_u(soliton, float(x), 0.3), abs=1e-9)

    def test_loop_regime_rejected(self) -> None:
        with pytest.raises(NonInvertibleParametrization):
            sakovich_u(SolitonParams(0.5), 0.0, 0.0)

    def test_profile_on_grid(self, soliton: SolitonParams) -> None:
        grid = GridSpec(x_max=200.0, n_x=400, dt=0.1, n_t=1)
        snap = sakovich_profile(soliton, grid, 0.0)
        assert len(snap) == 401
        assert snap.u[200] == pytest.approx(0.8, rel=1e-12)

    def test_profile_touching_boundary(self, soliton: SolitonParams) -> None:
        grid = GridSpec(x_max=20.0, n_x=40, dt=0.1, n_t=1)
        with pytest.raises(RightBoundaryNotVanishing):
            sakovich_profile(soliton, grid, 0.0, x_center=18.0)


class TestCertification:
    """PDE-residual refinement of the transcribed solution."""

    def test_refinement_orders(self) -> None:
        assert refinement_orders([0.2, 0.1, 0.05], [4e-2, 1e-2, 2.5e-3]) == pytest.approx([2.0, 2.0])

    def test_zero_residual_counts_as_converged(self) -> None:
        orders = refinement_orders([0.2, 0.1], [1e-3, 0.0])
        assert orders == [math.inf]
        assert Certification(steps=[0.2, 0.1], residuals=[1e-3, 0.0], orders=orders).passed

    def test_no_orders_fails(self) -> None:
        cert = Certification(steps=[0.2], residuals=[1e-3])
        assert not cert.passed
        assert math.isnan(cert.observed_order)

    def test_soliton_certified(self, soliton: SolitonParams) -> None:
        cert = certify_soliton(soliton)
        assert cert.passed, cert
        assert cert.residuals[0] > cert.residuals[-1]
        assert cert.observed_order >= 2.0

    def test_needs_two_levels(self, soliton: SolitonParams) -> None:
        with pytest.raises(InvalidValue):
            certify_soliton(soliton, levels=1)
