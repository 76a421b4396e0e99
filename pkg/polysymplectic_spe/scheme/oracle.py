"""
Independent Newton oracle for one cell.

Solves the three coupled midpoint equations directly for
(p_t[i, j+1], phi[i, j+1], pair-sum) without the cubic elimination, so the
closed-form update can be cross-checked against it.
"""

from __future__ import annotations

import numpy as np
import structlog

from polysymplectic_spe.config import settings
from polysymplectic_spe.errors import NewtonDiverged
from polysymplectic_spe.scheme.cell import CellInputs, CellOutputs, cell_residual, cell_scale, output_jacobian


log = structlog.get_logger()


def implicit_cell_oracle(
    c: CellInputs,
    tol: float | None = None,
    max_iter: int | None = None,
    max_halvings: int | None = None,
) -> CellOutputs:
    """
    Damped Newton iteration on the cleared midpoint residuals.

    The initial guess is the cell's lower-left data (p_t[i, j], phi[i, j]) and
    the right pair-sum. Each Newton step is halved until the residual
    infinity-norm decreases.

    Args:
        c: Cell data.
        tol: Convergence threshold relative to the cell scale
            (defaults to ``settings.scheme.newton_tol``).
        max_iter: Iteration cap (defaults to ``settings.scheme.newton_max_iter``).
        max_halvings: Step halvings per iteration (defaults to ``settings.scheme.newton_max_halvings``).

    Returns:
        CellOutputs satisfying the midpoint equations.

    Raises:
        NewtonDiverged: no convergence within the iteration budget.
    """
    cfg = settings.scheme
    tol = cfg.newton_tol if tol is None else tol
    max_iter = cfg.newton_max_iter if max_iter is None else max_iter
    max_halvings = cfg.newton_max_halvings if max_halvings is None else max_halvings

    z = CellOutputs(c.p_t_here_j, c.phi_here_j, c.s_right)
    r = cell_residual(c, z)
    norm = float(np.max(np.abs(r)))

    for iteration in range(max_iter + 1):
        if norm <= tol * cell_scale(c, z):
            return z
        if iteration == max_iter:
            break

        step = np.linalg.solve(output_jacobian(c, z), -r)
        lam = 1.0
        for _ in range(max_halvings + 1):
            trial = CellOutputs(*(np.asarray(z) + lam * step).tolist())
            r_trial = cell_residual(c, trial)
            norm_trial = float(np.max(np.abs(r_trial)))
            if norm_trial < norm:
                break
            lam *= 0.5
        else:
            # no decrease possible: accept only if already at the round-off floor
            if norm <= cfg.residual_tol * cell_scale(c, z):
                return z
            log.warning("newton_line_search_failed", iteration=iteration, residual=norm, cell=tuple(c))
            raise NewtonDiverged(iterations=iteration, residual=norm, cell=tuple(c))

        z, r, norm = trial, r_trial, norm_trial

    raise NewtonDiverged(iterations=max_iter, residual=norm, cell=tuple(c))


__all__ = ["implicit_cell_oracle"]
