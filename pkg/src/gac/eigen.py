"""Principal Dirichlet eigenpairs of -Delta_G on Grushin balls off the degeneracy line."""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .grid import FULL, Field, Grid2D, GrushinBall, ball_mask, make_grid
from .linear_solver import SolverConfig, assemble, pcg
from .tolerances import DEFAULT as TOL


class EigenError(RuntimeError):
    pass


@dataclass
class EigenResult:
    lambda_: float
    phi: Field           # sup-normalized, >= 0, zero off the ball mask
    residual: float      # max |(-Delta_G) phi - lambda phi| over the mask, relative to lambda
    ball: GrushinBall
    a: float             # offset of the ball from the line {x = 0}
    iterations: int = 0


def _rayleigh(A, v):
    return float(v @ (A @ v)) / float(v @ v)


def smallest_eigenpair(A, rel_tol: float = TOL.eigen_residual_rel,
                       shift: float = TOL.eigen_shift,
                       max_iters: int = TOL.eigen_max_iters,
                       cg_tol: float = 1e-12):
    """Inverse power iteration for the smallest eigenpair of a sparse SPD matrix.

    Stops once the Rayleigh quotient stalls to TOL.eigen_rq_stall_rel *and* the
    sup-norm eigen-residual drops below rel_tol * lambda.
    """
    n = A.shape[0]
    import scipy.sparse as sp

    As = A + shift * sp.identity(n, format="csr")
    v = np.ones(n) / np.sqrt(n)
    lam = _rayleigh(A, v)
    for it in range(1, max_iters + 1):
        w, _, relres = pcg(As, v, None, cg_tol, 20 * n)
        if relres > cg_tol:
            raise EigenError(f"inner CG stalled at residual {relres:.3e}")
        v = w / float(np.linalg.norm(w))
        lam_new = _rayleigh(A, v)
        res = float(np.max(np.abs(A @ v - lam_new * v)))
        stalled = abs(lam_new - lam) <= TOL.eigen_rq_stall_rel * abs(lam_new)
        lam = lam_new
        if stalled and res <= rel_tol * abs(lam):
            return lam, v, res / abs(lam), it
    raise EigenError(f"inverse power iteration did not converge in {max_iters} steps "
                     f"(last residual {res:.3e}, lambda {lam:.6e})")


def principal_eigenpair(grid: Grid2D, ball: GrushinBall,
                        cfg: SolverConfig = SolverConfig()) -> EigenResult:
    """Principal Dirichlet eigenpair of -Delta_G on the ball's node mask.

    The mask must be nonempty and disjoint from the degeneracy line x = 0.
    """
    mask = ball_mask(grid, ball)
    if not np.any(mask):
        raise EigenError("ball mask is empty on this grid")
    X, _ = grid.meshes()
    if np.min(np.abs(X[mask])) == 0.0:
        raise EigenError("ball mask touches the degeneracy line x = 0")
    A, _ = assemble(grid, mask, 0.0)
    lam, v, rel_res, iters = smallest_eigenpair(A)
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    v = v / np.max(v)
    vals = np.zeros((grid.ny, grid.nx))
    vals[mask] = v
    return EigenResult(lambda_=lam, phi=Field(grid, vals), residual=rel_res,
                       ball=ball, a=ball.x0 - ball.rho, iterations=iters)


def sweep_grid_for_ball(a: float, rho: float, nodes_across: int = 32) -> Grid2D:
    """Full grid containing the ball B_rho((a + rho, 0)) with >= nodes_across
    nodes over the ball's x-extent and a comparable y-resolution."""
    R = a + 2 * rho + max(0.5, rho / 4)
    hx = 2 * rho / nodes_across
    nx = int(np.ceil(2 * R / hx)) + 1
    if nx % 2 == 0:
        nx += 1
    hy_target = (rho ** 2) / nodes_across
    ny = int(np.ceil(2 * R ** 2 / hy_target)) + 1
    if ny % 2 == 0:
        ny += 1
    return make_grid(R, nx, ny, FULL)


def eigen_scaling_sweep(a: float, radii, nodes_across: int = 32):
    """Table (rho, lambda(rho), lambda * rho^2), sorted by rho.

    Per-radius jobs run in parallel when GAC_THREADS > 1.
    """
    radii = sorted(float(r) for r in radii)

    def job(rho):
        grid = sweep_grid_for_ball(a, rho, nodes_across)
        mask_nodes = int(np.sum(ball_mask(grid, GrushinBall(a + rho, 0.0, rho))))
        if mask_nodes < nodes_across:
            raise EigenError(f"grid too coarse for rho = {rho}")
        res = principal_eigenpair(grid, GrushinBall(a + rho, 0.0, rho))
        return (rho, res.lambda_, res.lambda_ * rho ** 2)

    n_threads = int(os.environ.get("GAC_THREADS", "1"))
    if n_threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_threads) as ex:
            rows = list(ex.map(job, radii))
    else:
        rows = [job(rho) for rho in radii]
    return rows


def dense_smallest(A) -> float:
    """Dense diagonalization oracle: smallest eigenvalue by full symmetric eig."""
    import scipy.sparse as sp

    dense = A.toarray() if sp.issparse(A) else np.asarray(A)
    return float(np.linalg.eigvalsh(dense)[0])


def euclidean_disk_lambda1(n: int = 33) -> float:
    """First Dirichlet eigenvalue of -Delta on the Euclidean unit disk, dense oracle.

    Standard 5-point Laplacian on the disk's node mask; n is nodes per axis.
    """
    h = 2.0 / (n - 1)
    xs = -1.0 + h * np.arange(n)
    X, Y = np.meshgrid(xs, xs)
    mask = X ** 2 + Y ** 2 < 1.0
    mask[0, :] = mask[-1, :] = False
    mask[:, 0] = mask[:, -1] = False
    idx = -np.ones(n * n, dtype=np.int64)
    nodes = np.nonzero(mask.ravel())[0]
    m = len(nodes)
    idx[nodes] = np.arange(m)
    A = np.zeros((m, m))
    A[np.arange(m), np.arange(m)] = 4.0 / h ** 2
    for d in (-1, 1, -n, n):
        nb = idx[nodes + d]
        ok = nb >= 0
        A[np.arange(m)[ok], nb[ok]] = -1.0 / h ** 2
    return float(np.linalg.eigvalsh(A)[0])


def write_sweep_csv(rows, path) -> None:
    arr = np.array(rows, dtype=float)
    np.savetxt(str(path), arr, delimiter=",", header="rho,lambda,lambda_rho_sq",
               comments="")
