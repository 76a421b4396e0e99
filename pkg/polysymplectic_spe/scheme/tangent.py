"""Linearized cell update: propagates variations along a converged base cell."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from polysymplectic_spe.errors import SingularLinearization
from polysymplectic_spe.model.grid import FloatArray
from polysymplectic_spe.scheme.cell import CellInputs, CellOutputs, input_jacobian, output_jacobian


def tangent_block(c: CellInputs, outputs: Sequence[float], variations: FloatArray) -> FloatArray:
    """
    Output variations for several input variations at once.

    Args:
        c: Base cell inputs.
        outputs: Converged base outputs (p_t_new, phi_new, s_new).
        variations: Shape (7,) or (7, k), field inputs in CellInputs order.

    Returns:
        Shape (3,) or (3, k): (dp_t_new, dphi_new, ds_new) per variation.

    Raises:
        SingularLinearization: J_out is singular (cannot happen for dx, dt > 0).
    """
    out = CellOutputs(*outputs)
    j_out = output_jacobian(c, out)
    rhs = -input_jacobian(c, out) @ np.asarray(variations, dtype=np.float64)
    try:
        dz = np.linalg.solve(j_out, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularLinearization("linearized cell system is singular", cell=tuple(c)) from e
    if not np.all(np.isfinite(dz)):
        raise SingularLinearization("linearized cell system produced non-finite variations", cell=tuple(c))
    return dz


def tangent_cell_update(c: CellInputs, outputs: CellOutputs, v: CellInputs) -> CellOutputs:
    """
    Variation of the cell outputs induced by the input variation ``v``.

    Differentiating the three midpoint equations at the converged point gives
    J_out dz = -J_in dv. Only the seven field entries of ``v`` are used; its
    dx and dt are ignored (steps are not varied).
    """
    dz = tangent_block(c, outputs, np.asarray(v[:7], dtype=np.float64))
    return CellOutputs(*dz.tolist())


__all__ = ["tangent_block", "tangent_cell_update"]
