"""
Closed-form update of one box cell of the polysymplectic midpoint scheme.

Cell corners: (i+1, j) and (i+1, j+1) on the known right column, (i, j) the
known lower-left point, (i, j+1) the unknown. With S the sum of the three
known p_t corners and A = 2 dx/dt + dx**2/2, eliminating phi and the p_x
pair-sum from the three midpoint equations leaves a monic cubic for
P = p_t[i, j+1]. Its depressed form has linear coefficient 12 A > 0, so it
has exactly one real root for any admissible cell.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from polysymplectic_spe.errors import InvalidValue, NoRealRoot
from polysymplectic_spe.model.grid import FloatArray


class CellInputs(NamedTuple):
    """Known data of one cell."""

    p_t_right_j: float
    p_t_right_j1: float
    p_t_here_j: float
    phi_right_j: float
    phi_right_j1: float
    phi_here_j: float
    s_right: float
    dx: float
    dt: float

    def validate(self) -> CellInputs:
        """Check finiteness and positive steps; returns self."""
        if not all(math.isfinite(v) for v in self):
            raise InvalidValue("cell", f"non-finite input in {self}")
        if self.dx <= 0 or self.dt <= 0:
            raise InvalidValue("cell", "dx and dt must be positive")
        return self

    @property
    def scale(self) -> float:
        """max(1, max |value|) over the seven field inputs."""
        return max(1.0, *(abs(v) for v in self[:7]))


class CellOutputs(NamedTuple):
    """Values produced at (i, j+1) plus the pair-sum of interval j at column i."""

    p_t_new: float
    phi_new: float
    s_new: float


def _step_terms(c: CellInputs) -> tuple[float, float]:
    s = c.p_t_right_j + c.p_t_here_j + c.p_t_right_j1
    a = 2.0 * c.dx / c.dt + 0.5 * c.dx * c.dx
    return s, a


def cubic_coefficients(c: CellInputs) -> tuple[float, float, float]:
    """
    Coefficients (c2, c1, c0) of P**3 + c2 P**2 + c1 P + c0 = 0.

    c2 = 3S, c1 = 3(S**2 + 4A) and
    c0 = S**3 + 24 s_right - (24/dt)(phi_right_j1 - phi_here_j)
         - 12 dx (phi_right_j + phi_right_j1) + 12 A p_t_right_j1
         + 6 dx**2 (p_t_right_j + p_t_here_j).
    """
    s, a = _step_terms(c)
    dx = c.dx
    c2 = 3.0 * s
    c1 = 3.0 * (s * s + 4.0 * a)
    c0 = (
        s * s * s
        + 24.0 * c.s_right
        - (24.0 / c.dt) * (c.phi_right_j1 - c.phi_here_j)
        - 12.0 * dx * (c.phi_right_j + c.phi_right_j1)
        + 12.0 * a * c.p_t_right_j1
        + 6.0 * dx * dx * (c.p_t_right_j + c.p_t_here_j)
    )
    return c2, c1, c0


# =============================================================================
# CUBIC SOLVER
# =============================================================================


def _monic(p: float, c2: float, c1: float, c0: float) -> float:
    return ((p + c2) * p + c1) * p + c0


def _monic_prime(p: float, c2: float, c1: float) -> float:
    return (3.0 * p + 2.0 * c2) * p + c1


def cubic_real_roots(c2: float, c1: float, c0: float) -> list[float]:
    """
    Real roots of a monic cubic, each refined by one Newton step.

    Closed form on the depressed cubic y**3 + p y + q = 0 (P = y - c2/3),
    written in the scale s = sqrt(|p|/3) so that no intermediate under- or
    overflows: hyperbolic-sine form for p > 0 (one root), trigonometric form
    for three real roots, hyperbolic-cosine form for one root with p < 0.
    When q / (2 s**3) is not representable the p term is negligible and
    y = -cbrt(q).
    """
    shift = c2 / 3.0
    p = c1 - c2 * shift
    q = 2.0 * shift * shift * shift - shift * c1 + c0
    if not (math.isfinite(p) and math.isfinite(q)):
        return []

    s = math.sqrt(abs(p) / 3.0)
    if s == 0.0:
        ys = [-float(np.cbrt(q))]
    else:
        ratio = 0.5 * q / s / s / s
        if math.isinf(ratio):
            ys = [-float(np.cbrt(q))]
        elif p > 0.0:
            ys = [-2.0 * s * math.sinh(math.asinh(ratio) / 3.0)]
        elif abs(ratio) <= 1.0:
            theta = math.acos(-ratio)
            ys = [2.0 * s * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        else:
            ys = [-math.copysign(2.0 * s * math.cosh(math.acosh(abs(ratio)) / 3.0), ratio)]

    roots = []
    for y in ys:
        root = y - shift
        fp = _monic_prime(root, c2, c1)
        if fp != 0.0:
            polished = root - _monic(root, c2, c1, c0) / fp
            if math.isfinite(polished) and abs(_monic(polished, c2, c1, c0)) <= abs(_monic(root, c2, c1, c0)):
                root = polished
        if math.isfinite(root):
            roots.append(root)
    return roots


def solve_cubic_select(c2: float, c1: float, c0: float, reference: float) -> float:
    """
    Real root of P**3 + c2 P**2 + c1 P + c0 closest to ``reference``.

    Continuity of the marched solution picks the root nearest the previous
    time value; an exact tie goes to the larger root.

    Raises:
        NoRealRoot: no finite real root was produced (non-finite or overflowing coefficients).
    """
    if not all(math.isfinite(v) for v in (c2, c1, c0)):
        raise NoRealRoot("cubic coefficients are not finite", c2=c2, c1=c1, c0=c0)
    roots = cubic_real_roots(c2, c1, c0)
    if not roots:
        raise NoRealRoot("cubic has no finite real root", c2=c2, c1=c1, c0=c0)
    return min(roots, key=lambda r: (abs(r - reference), -r))


# =============================================================================
# LINEAR UPDATES
# =============================================================================


def update_phi(c: CellInputs, p_t_new: float) -> float:
    """phi[i, j+1] = (phi_right_j - phi_here_j + phi_right_j1) - dx S - dx P."""
    s, _ = _step_terms(c)
    return (c.phi_right_j - c.phi_here_j + c.phi_right_j1) - c.dx * s - c.dx * p_t_new


def update_sx(c: CellInputs, p_t_new: float, phi_new: float) -> float:
    """Pair-sum p_x[i, j] + p_x[i, j+1] from the conservation equation of the cell."""
    ratio = c.dx / c.dt
    half_dx = 0.5 * c.dx
    return (
        c.s_right
        - ratio * (c.p_t_here_j + c.p_t_right_j - c.p_t_right_j1)
        + ratio * p_t_new
        - half_dx * (c.phi_right_j + c.phi_here_j + c.phi_right_j1)
        - half_dx * phi_new
    )


def cell_update(c: CellInputs) -> CellOutputs:
    """
    Cubic root (nearest to p_t[i, j]), then the two linear updates.

    Raises:
        InvalidValue: non-finite inputs or non-positive steps.
        NoRealRoot: the cubic coefficients overflow.
    """
    c2, c1, c0 = cubic_coefficients(c.validate())
    p_new = solve_cubic_select(c2, c1, c0, reference=c.p_t_here_j)
    phi_new = update_phi(c, p_new)
    return CellOutputs(p_new, phi_new, update_sx(c, p_new, phi_new))


# =============================================================================
# MIDPOINT EQUATIONS
# =============================================================================


def cell_residual(c: CellInputs, out: CellOutputs) -> FloatArray:
    """
    Residuals of the three midpoint equations, cleared of step denominators.

    Each equation is multiplied by 2dx dt, 2dx and 2dt respectively so every
    term is of the size of the cell values:

        R1 = dt (s_right - s_new) + dx (dp_t over time) - (dx dt / 2) sum(phi)
        R2 = (phi differences across x) - dx sum(p_t)
        R3 = (phi differences across t) - dt (s_right + s_new) - (dt/12) sum(p_t)**3
    """
    dx, dt = c.dx, c.dt
    pa, pb, pc, pd = c.p_t_right_j, c.p_t_right_j1, c.p_t_here_j, out.p_t_new
    fa, fb, fc, fd = c.phi_right_j, c.phi_right_j1, c.phi_here_j, out.phi_new
    q = pa + pb + pc + pd
    r1 = dt * (c.s_right - out.s_new) + dx * (pb + pd - pa - pc) - 0.5 * dx * dt * (fa + fb + fc + fd)
    r2 = (fa + fb - fc - fd) - dx * q
    r3 = (fd + fb - fc - fa) - dt * (c.s_right + out.s_new) - (dt / 12.0) * q**3
    return np.array([r1, r2, r3], dtype=np.float64)


def cell_scale(c: CellInputs, out: CellOutputs) -> float:
    """max(1, max |value|) over inputs and outputs of a cell."""
    return max(c.scale, *(abs(v) for v in out))


def output_jacobian(c: CellInputs, out: CellOutputs) -> FloatArray:
    """d(R1, R2, R3) / d(p_t_new, phi_new, s_new)."""
    dx, dt = c.dx, c.dt
    q = c.p_t_right_j + c.p_t_right_j1 + c.p_t_here_j + out.p_t_new
    return np.array(
        [
            [dx, -0.5 * dx * dt, -dt],
            [-dx, -1.0, 0.0],
            [-0.25 * dt * q * q, 1.0, -dt],
        ],
        dtype=np.float64,
    )


def input_jacobian(c: CellInputs, out: CellOutputs) -> FloatArray:
    """d(R1, R2, R3) / d(seven field inputs), columns in CellInputs order."""
    dx, dt = c.dx, c.dt
    q = c.p_t_right_j + c.p_t_right_j1 + c.p_t_here_j + out.p_t_new
    cubic = -0.25 * dt * q * q
    half = -0.5 * dx * dt
    #                p_a    p_b    p_c    phi_a  phi_b  phi_c  s_right
    return np.array(
        [
            [-dx, dx, -dx, half, half, half, dt],
            [-dx, -dx, -dx, 1.0, 1.0, -1.0, 0.0],
            [cubic, cubic, cubic, -1.0, 1.0, -1.0, -dt],
        ],
        dtype=np.float64,
    )


__all__ = [
    "CellInputs",
    "CellOutputs",
    "cell_residual",
    "cell_scale",
    "cell_update",
    "cubic_coefficients",
    "cubic_real_roots",
    "input_jacobian",
    "output_jacobian",
    "solve_cubic_select",
    "update_phi",
    "update_sx",
]
