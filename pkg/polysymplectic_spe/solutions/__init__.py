"""Exact soliton ground truth and the PDE-residual checker that certifies it."""

from polysymplectic_spe.solutions.residual import pde_residual
from polysymplectic_spe.solutions.sakovich import (
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


__all__ = [
    "Certification",
    "SolitonParams",
    "certify_soliton",
    "invert_parametrization",
    "pde_residual",
    "refinement_orders",
    "sakovich_field",
    "sakovich_half_period",
    "sakovich_parametric",
    "sakovich_profile",
    "sakovich_u",
]
