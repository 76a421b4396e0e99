"""Pseudo-spectral RK4 reference solver."""

from polysymplectic_spe.spectral.solver import (
    SpectralState,
    remove_mean,
    rk4_step,
    simulate_spectral,
    spe_rhs,
    spectral_dx,
    spectral_dx_inv,
)


__all__ = [
    "SpectralState",
    "remove_mean",
    "rk4_step",
    "simulate_spectral",
    "spe_rhs",
    "spectral_dx",
    "spectral_dx_inv",
]
