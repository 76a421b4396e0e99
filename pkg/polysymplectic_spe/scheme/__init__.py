"""Polysymplectic box scheme: cell update, Newton oracle, tangents and marching."""

from polysymplectic_spe.scheme.cell import (
    CellInputs,
    CellOutputs,
    cell_residual,
    cell_scale,
    cell_update,
    cubic_coefficients,
    cubic_real_roots,
    input_jacobian,
    output_jacobian,
    solve_cubic_select,
    update_phi,
    update_sx,
)
from polysymplectic_spe.scheme.marching import (
    SimulationTrace,
    TangentSeed,
    column_residual,
    march_column,
    simulate,
    simulate_trace,
)
from polysymplectic_spe.scheme.oracle import implicit_cell_oracle
from polysymplectic_spe.scheme.tangent import tangent_block, tangent_cell_update


__all__ = [
    "CellInputs",
    "CellOutputs",
    "SimulationTrace",
    "TangentSeed",
    "cell_residual",
    "cell_scale",
    "cell_update",
    "column_residual",
    "cubic_coefficients",
    "cubic_real_roots",
    "implicit_cell_oracle",
    "input_jacobian",
    "march_column",
    "output_jacobian",
    "simulate",
    "simulate_trace",
    "solve_cubic_select",
    "tangent_block",
    "tangent_cell_update",
    "update_phi",
    "update_sx",
]
