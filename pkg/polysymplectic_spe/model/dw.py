"""
De Donder-Weyl (polysymplectic) formulation of the Short Pulse Equation.

With the potential u = phi_x the SPE follows from the first order Lagrangian
L = phi_t*phi_x/2 - phi_x**4/24 + phi**2/2. Its polymomenta, DW Hamiltonian
and first-order matrix form live here, together with the two components of
the polysymplectic form that the discrete conservation law is built from.
"""

from __future__ import annotations

import itertools
from enum import Enum

import numpy as np

from polysymplectic_spe.model.grid import DWTriple, FloatArray


class Axis(Enum):
    """Independent variable of the field theory."""

    X = "x"
    T = "t"


class KappaConvention(Enum):
    """
    Orientation of the two-form components.

    PRINTED: kappa_x = -dp_x ^ dphi, kappa_t = dp_t ^ dphi.
    BETA:    kappa_a = (1/2) dz ^ beta_a dz, i.e. v1 . beta_a v2, which gives
             kappa_x = +dp_x ^ dphi. Only this orientation makes
             d_t kappa_t + d_x kappa_x vanish on solutions.
    """

    PRINTED = "printed"
    BETA = "beta"


def _axis(a: Axis | str) -> Axis:
    return a if isinstance(a, Axis) else Axis(a)


# =============================================================================
# HAMILTONIAN DATA
# =============================================================================


def dw_hamiltonian(z: DWTriple) -> float:
    """H = 2 p_x p_t + (2/3) p_t**4 - phi**2 / 2."""
    return 2.0 * z.p_x * z.p_t + (2.0 / 3.0) * z.p_t**4 - 0.5 * z.phi**2


def dw_hamiltonian_density(phi: FloatArray, p_x: FloatArray, p_t: FloatArray) -> FloatArray:
    """Vectorized ``dw_hamiltonian`` over aligned arrays."""
    return 2.0 * p_x * p_t + (2.0 / 3.0) * p_t**4 - 0.5 * phi**2


def hamiltonian_gradient(z: DWTriple) -> FloatArray:
    """(dH/dphi, dH/dp_x, dH/dp_t) = (-phi, 2 p_t, 2 p_x + (8/3) p_t**3)."""
    return np.array([-z.phi, 2.0 * z.p_t, 2.0 * z.p_x + (8.0 / 3.0) * z.p_t**3], dtype=np.float64)


def polymomenta_from_derivatives(phi_t: float, phi_x: float) -> tuple[float, float]:
    """
    Legendre map from field derivatives to polymomenta.

    Returns:
        (p_t, p_x) = (phi_x / 2, phi_t / 2 - phi_x**3 / 6).
    """
    return 0.5 * phi_x, 0.5 * phi_t - phi_x**3 / 6.0


def derivatives_from_polymomenta(p_t: float, p_x: float) -> tuple[float, float]:
    """
    Inverse Legendre map read off the DW equations.

    Returns:
        (phi_t, phi_x) = (2 p_x + (8/3) p_t**3, 2 p_t).
    """
    return 2.0 * p_x + (8.0 / 3.0) * p_t**3, 2.0 * p_t


# =============================================================================
# MATRIX FORM
# =============================================================================

# Z = (phi, p_x, p_t). Matching beta_x Z_x + beta_t Z_t = grad H row by row
# against the DW equations fixes both matrices uniquely.
_BETA_X = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_BETA_T = np.array([[0.0, 0.0, -1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])


def beta_matrices() -> tuple[FloatArray, FloatArray]:
    """Return fresh copies of (beta_x, beta_t)."""
    return _BETA_X.copy(), _BETA_T.copy()


def _beta(a: Axis) -> FloatArray:
    return _BETA_X if a is Axis.X else _BETA_T


def matrix_form_residual(z: DWTriple, z_x: FloatArray, z_t: FloatArray) -> FloatArray:
    """beta_x Z_x + beta_t Z_t - grad H(Z); zero exactly when the DW equations hold."""
    return _BETA_X @ np.asarray(z_x, dtype=np.float64) + _BETA_T @ np.asarray(z_t, dtype=np.float64) - hamiltonian_gradient(z)


def dkp_residual(a: Axis | str, b: Axis | str, c: Axis | str) -> float:
    """
    Max-entry magnitude of b^a b^b b^c + b^c b^b b^a + b^a d^bc + b^c d^ab.

    Zero means the Duffin-Kemmer-Petiau relation holds for the index triple.
    """
    a, b, c = _axis(a), _axis(b), _axis(c)
    ba, bb, bc = _beta(a), _beta(b), _beta(c)
    lhs = ba @ bb @ bc + bc @ bb @ ba
    rhs = -ba * float(b is c) - bc * float(a is b)
    return float(np.max(np.abs(lhs - rhs)))


def dkp_residuals() -> dict[tuple[str, str, str], float]:
    """``dkp_residual`` for all eight index triples."""
    return {
        (a.value, b.value, c.value): dkp_residual(a, b, c)
        for a, b, c in itertools.product(Axis, repeat=3)
    }


# =============================================================================
# POLYSYMPLECTIC FORM
# =============================================================================


def kappa_eval(
    component: Axis | str,
    v1: DWTriple,
    v2: DWTriple,
    convention: KappaConvention = KappaConvention.PRINTED,
) -> float:
    """
    Evaluate a two-form component on two variations.

    kappa_t(v1, v2) = dp_t1 dphi2 - dp_t2 dphi1 in both conventions;
    kappa_x(v1, v2) = -(dp_x1 dphi2 - dp_x2 dphi1) in PRINTED, the opposite in BETA.
    """
    axis = _axis(component)
    if convention is KappaConvention.BETA:
        # v1 . beta_a v2 written out term by term so kappa(v, v) is exactly zero
        if axis is Axis.T:
            return v1.p_t * v2.phi - v1.phi * v2.p_t
        return v1.p_x * v2.phi - v1.phi * v2.p_x
    if axis is Axis.T:
        return v1.p_t * v2.phi - v2.p_t * v1.phi
    return -(v1.p_x * v2.phi - v2.p_x * v1.phi)


__all__ = [
    "Axis",
    "KappaConvention",
    "beta_matrices",
    "derivatives_from_polymomenta",
    "dkp_residual",
    "dkp_residuals",
    "dw_hamiltonian",
    "dw_hamiltonian_density",
    "hamiltonian_gradient",
    "kappa_eval",
    "matrix_form_residual",
    "polymomenta_from_derivatives",
]
