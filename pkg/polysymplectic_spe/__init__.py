"""
Polysymplectic SPE - Structure-Preserving Integration of the Short Pulse Equation.

========================================================

Midpoint box scheme in De Donder-Weyl variables, marched in space from a
zero right boundary, with an independent Newton oracle, a pseudo-spectral
RK4 baseline, the exact Sakovich soliton as ground truth and a diagnostics
harness (sigma errors, discrete conservation law, convergence studies).

Architecture:
    model/      fields, polymomenta, beta-matrices, initial/boundary data
    scheme/     closed-form cell update, Newton oracle, tangents, marching
    solutions/  exact soliton and PDE-residual certification
    spectral/   pseudo-spectral reference solver
    flows/      references, convergence studies, comparison, self-checks
    io/         config files and deterministic writers

Usage:
    from polysymplectic_spe import GridSpec, SolitonParams, sakovich_profile, simulate

    grid = GridSpec(x_max=100.0, n_x=2048, dt=0.01, n_t=500)
    u0 = sakovich_profile(SolitonParams(0.2), grid, 0.0, x_center=25.0).u
    snapshots, report = simulate(grid, u0, [grid.n_t])

CLI:
    spe-run verify
"""

__version__ = "0.1.0"
__author__ = "Polysymplectic SPE Team"

from polysymplectic_spe.errors import ExitCategory, SPEError
from polysymplectic_spe.model import DWColumn, DWTriple, FieldSnapshot, GridSpec, TangentColumn
from polysymplectic_spe.reports import ConvergenceTable, RunReport, Scheme
from polysymplectic_spe.scheme import CellInputs, CellOutputs, cell_update, implicit_cell_oracle, simulate, simulate_trace
from polysymplectic_spe.solutions import SolitonParams, pde_residual, sakovich_profile, sakovich_u
from polysymplectic_spe.spectral import simulate_spectral


__all__ = [
    "CellInputs",
    "CellOutputs",
    "ConvergenceTable",
    "DWColumn",
    "DWTriple",
    "ExitCategory",
    "FieldSnapshot",
    "GridSpec",
    "RunReport",
    "SPEError",
    "Scheme",
    "SolitonParams",
    "TangentColumn",
    "__version__",
    "cell_update",
    "implicit_cell_oracle",
    "pde_residual",
    "sakovich_profile",
    "sakovich_u",
    "simulate",
    "simulate_spectral",
    "simulate_trace",
]
