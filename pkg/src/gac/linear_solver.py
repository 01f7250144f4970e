"""Shifted Dirichlet solves (M - Delta_G) u = rhs by diagonally preconditioned CG.

The system is assembled on the masked unknowns with Dirichlet values eliminated
into the right-hand side, which keeps the matrix symmetric positive definite and
an M-matrix (the engine of all comparison arguments downstream).
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .grid import Field, Grid2D


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-10
    max_iter: int | None = None  # default 10 * n_unknowns

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.max_iter is not None and self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class SolveStats:
    iterations: int
    rel_residual: float
    wall_time: float


def _check_mask(grid: Grid2D, mask: np.ndarray) -> None:
    if mask.shape != (grid.ny, grid.nx):
        raise ValueError("mask shape does not match grid")
    edge = np.zeros_like(mask)
    edge[0, :] = edge[-1, :] = True
    edge[:, 0] = edge[:, -1] = True
    if np.any(mask & edge):
        raise ValueError("mask must not touch the grid boundary (no off-grid stencils)")


def assemble(grid: Grid2D, mask: np.ndarray, M: float, c_diag: np.ndarray | None = None):
    """CSR matrix of (M - Delta_G + diag(c)) on mask unknowns, plus the index map.

    Returns (A, idx) where idx maps flat node index -> unknown index (-1 off mask).
    """
    if M < 0:
        raise SolverError("shift M must be nonnegative (indefinite system rejected)")
    _check_mask(grid, mask)
    nx, ny = grid.nx, grid.ny
    flat_mask = mask.ravel()
    n = int(flat_mask.sum())
    if n == 0:
        raise ValueError("mask is empty")
    idx = -np.ones(nx * ny, dtype=np.int64)
    idx[flat_mask] = np.arange(n)

    nodes = np.nonzero(flat_mask)[0]
    ii = nodes % nx
    jj = nodes // nx
    x2 = grid.xs[ii] ** 2
    cx = 1.0 / grid.hx ** 2
    cy = x2 / grid.hy ** 2

    diag = M + 2.0 * cx + 2.0 * cy
    if c_diag is not None:
        diag = diag + c_diag.ravel()[nodes]

    rows = [np.arange(n)]
    cols = [np.arange(n)]
    vals = [diag]
    for d_node, coeff in ((-1, np.full(n, cx)), (1, np.full(n, cx)),
                          (-nx, cy), (nx, cy)):
        nb = idx[nodes + d_node]
        ok = nb >= 0
        rows.append(np.arange(n)[ok])
        cols.append(nb[ok])
        vals.append(-coeff[ok])
    A = sp.csr_matrix((np.concatenate(vals),
                       (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    return A, idx


def boundary_rhs(grid: Grid2D, mask: np.ndarray, idx: np.ndarray,
                 rhs: Field, boundary: Field) -> np.ndarray:
    """Right-hand side on mask unknowns with Dirichlet neighbors eliminated in."""
    nx = grid.nx
    flat_mask = mask.ravel()
    nodes = np.nonzero(flat_mask)[0]
    ii = nodes % nx
    cx = 1.0 / grid.hx ** 2
    cy = (grid.xs[ii] ** 2) / grid.hy ** 2
    bvals = boundary.values.ravel()
    b = rhs.values.ravel()[nodes].astype(float).copy()
    for d_node, coeff in ((-1, np.full(len(nodes), cx)), (1, np.full(len(nodes), cx)),
                          (-nx, cy), (nx, cy)):
        nb_node = nodes + d_node
        outside = idx[nb_node] < 0
        b[outside] += coeff[outside] * bvals[nb_node[outside]]
    return b


def pcg(A: sp.csr_matrix, b: np.ndarray, x0: np.ndarray | None,
        rel_tol: float, max_iter: int):
    """Jacobi-preconditioned conjugate gradients with a fixed reduction order."""
    n = b.shape[0]
    norm_b = float(np.linalg.norm(b))
    if norm_b == 0.0:
        return np.zeros(n), 0, 0.0
    x = np.zeros(n) if x0 is None else x0.astype(float).copy()
    inv_diag = 1.0 / A.diagonal()
    r = b - A @ x
    z = inv_diag * r
    p = z.copy()
    rz = float(r @ z)
    res = float(np.linalg.norm(r))
    it = 0
    while res > rel_tol * norm_b and it < max_iter:
        Ap = A @ p
        alpha = rz / float(p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        res = float(np.linalg.norm(r))
        z = inv_diag * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
        it += 1
    return x, it, res / norm_b


def solve_shifted_dirichlet(grid: Grid2D, mask: np.ndarray, M: float,
                            rhs: Field, boundary: Field,
                            cfg: SolverConfig = SolverConfig(),
                            x0: Field | None = None,
                            system=None):
    """Solve (M - Delta_G) u = rhs on the mask with Dirichlet data off it.

    M must be positive whenever the mask touches the line x = 0 (the y-coupling
    vanishes there).  `system` may carry a pre-assembled (A, idx) pair so the
    outer iteration does not rebuild the matrix every sweep.
    """
    t0 = time.perf_counter()
    if system is None:
        A, idx = assemble(grid, mask, M)
    else:
        A, idx = system
    if M == 0.0 and np.any(mask[:, np.isclose(grid.xs, 0.0)]):
        # still PD through the x-coupling, but the contract requires the shift
        raise SolverError("M must be > 0 when the mask touches the line x = 0")
    b = boundary_rhs(grid, mask, idx, rhs, boundary)
    n = b.shape[0]
    max_iter = cfg.max_iter if cfg.max_iter is not None else 10 * n
    x0_vec = None if x0 is None else x0.values.ravel()[mask.ravel()]
    x, iters, relres = pcg(A, b, x0_vec, cfg.rel_tol, max_iter)
    if relres > cfg.rel_tol:
        raise SolverError(f"CG failed to converge: {iters} iterations, "
                          f"relative residual {relres:.3e}")
    out = boundary.values.copy()
    out.ravel()[mask.ravel()] = x
    return Field(grid, out), SolveStats(iterations=iters, rel_residual=relres,
                                        wall_time=time.perf_counter() - t0)
