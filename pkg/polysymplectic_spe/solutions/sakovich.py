"""
Sakovich one-soliton solution of the short pulse equation.

The solution is known in parametric form. With n = sqrt(1 - m**2),
phi = m (y + t) and psi = n (y - t):

    u = 4 m n (m sin(psi) sinh(phi) + n cos(psi) cosh(phi)) / D
    x = y + 2 m n (m sin(2 psi) - n sinh(2 phi)) / D
    D = m**2 sin(psi)**2 + n**2 cosh(phi)**2

The map y -> x is single valued for m < sin(pi/8); u(x, t) is obtained by
inverting it numerically. ``certify_soliton`` checks sampled values against
the PDE itself before they are used as a reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy.optimize import brentq

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import InvalidValue, NonInvertibleParametrization, RightBoundaryNotVanishing
from polysymplectic_spe.model.grid import FieldSnapshot, FloatArray, GridSpec
from polysymplectic_spe.solutions.residual import pde_residual


log = structlog.get_logger()

INVERSION_XTOL = 1e-13
SMOOTH_LIMIT = math.sin(math.pi / 8.0)


@dataclass(frozen=True)
class SolitonParams:
    """Shape parameter m of the soliton, 0 < m < 1."""

    m: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m) and 0.0 < self.m < 1.0):
            raise InvalidValue("soliton_m", "must lie strictly between 0 and 1")

    @property
    def n(self) -> float:
        return math.sqrt(1.0 - self.m * self.m)

    @property
    def is_smooth(self) -> bool:
        """True when the parametric map is monotone for every t (no loops or cusps)."""
        return self.m < SMOOTH_LIMIT


# =============================================================================
# PARAMETRIC FORM
# =============================================================================


def _hyperbolic(phi: float) -> tuple[float, float]:
    """(tanh, sech) without overflow for large |phi|."""
    e = math.exp(-2.0 * abs(phi))
    sech = 2.0 * math.exp(-abs(phi)) / (1.0 + e)
    tanh = math.copysign((1.0 - e) / (1.0 + e), phi)
    return tanh, sech


def sakovich_parametric(p: SolitonParams, y: float, t: float) -> tuple[float, float]:
    """
    Evaluate the parametric solution at parameter ``y``.

    Returns:
        (x, u) with the pulse centred at x = 0 for t = 0.
    """
    m, n = p.m, p.n
    phi = m * (y + t)
    psi = n * (y - t)
    tanh, sech = _hyperbolic(phi)
    sin_psi, cos_psi = math.sin(psi), math.cos(psi)
    # numerator and denominator divided by cosh(phi)**2
    denom = m * m * sin_psi * sin_psi * sech * sech + n * n
    u = 4.0 * m * n * (m * sin_psi * tanh * sech + n * cos_psi * sech) / denom
    x = y + 2.0 * m * n * (m * math.sin(2.0 * psi) * sech * sech - 2.0 * n * tanh) / denom
    return x, u


def _offset_bound(p: SolitonParams) -> float:
    """Upper bound of |x(y, t) - y|."""
    return 2.0 * p.m * p.m / p.n + 4.0 * p.m


def invert_parametrization(p: SolitonParams, x: float, t: float) -> float:
    """
    Parameter y with x(y, t) = x.

    The root is bracketed by |x - y| <= 2 m**2 / n + 4 m and located with Brent's
    method to 1e-13 in y.

    Raises:
        NonInvertibleParametrization: the bracket holds no sign change or the
            map is not increasing at the root (loop regime).
    """
    if not p.is_smooth:
        raise NonInvertibleParametrization("m is in the loop regime, x(y) is multivalued", m=p.m, limit=SMOOTH_LIMIT)
    width = _offset_bound(p) + 1.0
    lo, hi = x - width, x + width

    def gap(y: float) -> float:
        return sakovich_parametric(p, y, t)[0] - x

    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo * g_hi > 0.0:
        raise NonInvertibleParametrization("no sign change in the inversion bracket", m=p.m, x=x, t=t)
    y = brentq(gap, lo, hi, xtol=INVERSION_XTOL, rtol=4.0 * np.finfo(float).eps, maxiter=200)

    h = 1e-6
    slope = (gap(y + h) - gap(y - h)) / (2.0 * h)
    if slope <= 0.0:
        raise NonInvertibleParametrization("parametric map is not monotone at the root", m=p.m, x=x, t=t, slope=slope)
    return float(y)


def sakovich_u(p: SolitonParams, x: float, t: float, x_center: float = 0.0) -> float:
    """Field value u(x, t) of the soliton centred at ``x_center`` at t = 0."""
    xi = x - x_center
    y = invert_parametrization(p, xi, t)
    return sakovich_parametric(p, y, t)[1]


def sakovich_field(p: SolitonParams, x: FloatArray, t: float, x_center: float = 0.0) -> FloatArray:
    """``sakovich_u`` over an array of abscissae."""
    return np.array([sakovich_u(p, float(xi), t, x_center) for xi in np.ravel(x)]).reshape(np.shape(x))


def sakovich_profile(
    p: SolitonParams,
    grid: GridSpec,
    t: float,
    x_center: float | None = None,
    boundary_tol: float | None = None,
) -> FieldSnapshot:
    """
    Soliton sampled on the marching grid points x_i = i dx.

    Args:
        p: Soliton parameters.
        grid: Target grid.
        t: Physical time.
        x_center: Pulse position at t = 0 (defaults to the middle of the domain).
        boundary_tol: Right-boundary tolerance relative to max|u|
            (defaults to ``settings.scheme.boundary_tol``).

    Raises:
        NonInvertibleParametrization: the map cannot be inverted on the grid.
        RightBoundaryNotVanishing: the pulse touches x = x_max.
    """
    center = grid.x_max / 2.0 if x_center is None else x_center
    u = sakovich_field(p, grid.x_points(), t, center)
    tol = settings.scheme.boundary_tol if boundary_tol is None else boundary_tol
    peak = float(np.max(np.abs(u)))
    if abs(u[-1]) > tol * peak:
        raise RightBoundaryNotVanishing(
            "soliton does not vanish at the right boundary; widen the domain or move x_center",
            u_right=float(u[-1]),
            peak=peak,
            tolerance=tol,
        )
    return FieldSnapshot(t=t, u=u)


def sakovich_half_period(p: SolitonParams) -> float:
    """
    Shift tau = pi / (2 n) of the exact flow: u(x - tau, t + tau) = -u(x, t).

    Shifting y by -tau and t by +tau leaves phi unchanged and moves psi by -pi.
    """
    return math.pi / (2.0 * p.n)


# =============================================================================
# CERTIFICATION
# =============================================================================


@dataclass(frozen=True)
class Certification:
    """Outcome of a residual refinement study."""

    steps: list[float]
    residuals: list[float]
    orders: list[float] = field(default_factory=list)
    min_order: float = 2.0

    @property
    def passed(self) -> bool:
        return bool(self.orders) and all(o >= self.min_order for o in self.orders)

    @property
    def observed_order(self) -> float:
        return min(self.orders) if self.orders else float("nan")


def refinement_orders(steps: list[float], errors: list[float]) -> list[float]:
    """Observed orders log(e_k / e_{k+1}) / log(h_k / h_{k+1})."""
    orders = []
    for (h0, e0), (h1, e1) in zip(zip(steps, errors), zip(steps[1:], errors[1:])):
        if e0 > 0.0 and e1 > 0.0:
            orders.append(math.log(e0 / e1) / math.log(h0 / h1))
        else:
            orders.append(float("inf") if e1 == 0.0 else float("nan"))
    return orders


def certify_soliton(
    p: SolitonParams,
    t: float = 0.0,
    *,
    x_center: float = 0.0,
    half_width: float = 2.0,
    half_duration: float = 1.0,
    base_step: float = 0.2,
    levels: int = 3,
    min_order: float | None = None,
) -> Certification:
    """
    Refinement study of ``pde_residual`` on samples of the transcribed soliton.

    A space-time patch centred on the pulse at time ``t`` is sampled with steps
    base_step / 2**k for k = 0..levels-1; the residual must fall at least at
    ``min_order`` between successive levels.

    Args:
        p: Soliton parameters.
        t: Centre time of the patch.
        x_center: Pulse position at t = 0.
        half_width: Half extent of the patch in x.
        half_duration: Half extent of the patch in t.
        base_step: Coarsest sampling step (same in x and t).
        levels: Number of refinement levels (at least 2).
        min_order: Required order (defaults to ``settings.bench.certification_min_order``).
    """
    if levels < 2:
        raise InvalidValue("levels", "certification needs at least two levels")
    required = settings.bench.certification_min_order if min_order is None else min_order
    x_mid = x_center - t
    steps, residuals = [], []
    for k in range(levels):
        h = base_step / 2**k
        xs = x_mid + h * np.arange(-round(half_width / h), round(half_width / h) + 1)
        ts = t + h * np.arange(-round(half_duration / h), round(half_duration / h) + 1)
        patch = np.array([[sakovich_u(p, float(x), float(tk), x_center) for x in xs] for tk in ts])
        steps.append(h)
        residuals.append(pde_residual(patch, h, h))

    cert = Certification(steps=steps, residuals=residuals, orders=refinement_orders(steps, residuals), min_order=required)
    log.info(
        "soliton_certification",
        m=p.m,
        residuals=[f"{r:.3e}" for r in residuals],
        order=round(cert.observed_order, 3),
        passed=cert.passed,
    )
    return cert


__all__ = [
    "Certification",
    "SolitonParams",
    "certify_soliton",
    "invert_parametrization",
    "refinement_orders",
    "sakovich_field",
    "sakovich_half_period",
    "sakovich_parametric",
    "sakovich_profile",
    "sakovich_u",
]
