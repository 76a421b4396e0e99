"""
Continuous theory objects and the initial/boundary data of the marching problem.
"""

from polysymplectic_spe.model.data import boundary_column, initial_row
from polysymplectic_spe.model.dw import (
    Axis,
    KappaConvention,
    beta_matrices,
    derivatives_from_polymomenta,
    dkp_residual,
    dkp_residuals,
    dw_hamiltonian,
    dw_hamiltonian_density,
    hamiltonian_gradient,
    kappa_eval,
    matrix_form_residual,
    polymomenta_from_derivatives,
)
from polysymplectic_spe.model.grid import ColumnTrace, DWColumn, DWTriple, FieldSnapshot, FloatArray, GridSpec, TangentColumn


__all__ = [
    "Axis",
    "ColumnTrace",
    "DWColumn",
    "DWTriple",
    "FieldSnapshot",
    "FloatArray",
    "GridSpec",
    "KappaConvention",
    "TangentColumn",
    "beta_matrices",
    "boundary_column",
    "derivatives_from_polymomenta",
    "dkp_residual",
    "dkp_residuals",
    "dw_hamiltonian",
    "dw_hamiltonian_density",
    "hamiltonian_gradient",
    "initial_row",
    "kappa_eval",
    "matrix_form_residual",
    "polymomenta_from_derivatives",
]
