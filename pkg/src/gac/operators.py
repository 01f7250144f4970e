"""Discrete Grushin operators on a grid: Delta_G, |grad_G|^2, residuals, quadrature."""
from __future__ import annotations

import numpy as np

from .grid import Field, Grid2D, grushin_norm
from .potential import DoubleWell, evaluate


def apply_laplacian(u: Field) -> Field:
    """Delta_G u = u_xx + x^2 u_yy by centered differences; boundary rows carry 0."""
    g = u.grid
    v = u.values
    out = np.zeros_like(v)
    hx2 = g.hx ** 2
    hy2 = g.hy ** 2
    x2 = g.xs[1:-1] ** 2
    out[1:-1, 1:-1] = (
        (v[1:-1, 2:] - 2.0 * v[1:-1, 1:-1] + v[1:-1, :-2]) / hx2
        + x2[None, :] * (v[2:, 1:-1] - 2.0 * v[1:-1, 1:-1] + v[:-2, 1:-1]) / hy2
    )
    return Field(g, out)


def gradient_sq(u: Field) -> Field:
    """(u_x)^2 + x^2 (u_y)^2, centered in the interior and one-sided on the boundary."""
    g = u.grid
    v = u.values
    ux = np.gradient(v, g.hx, axis=1)
    uy = np.gradient(v, g.hy, axis=0)
    X = g.xs[None, :]
    return Field(g, ux ** 2 + (X ** 2) * uy ** 2)


def pde_residual(u: Field, w: DoubleWell):
    """r = Delta_G u - W'(u) at interior nodes; returns (field, interior max |r|)."""
    g = u.grid
    lap = apply_laplacian(u).values
    res = np.zeros_like(lap)
    res[1:-1, 1:-1] = lap[1:-1, 1:-1] - evaluate(w, u.values[1:-1, 1:-1], 1)
    interior_max = float(np.max(np.abs(res[1:-1, 1:-1])))
    return Field(g, res), interior_max


def fundamental_solution_values(grid: Grid2D) -> Field:
    """psi = (x^4 + 4 y^2)^(-1/4); the origin (where psi blows up) is set to 0."""
    X, Y = grid.meshes()
    r4 = X ** 4 + 4.0 * Y ** 2
    with np.errstate(divide="ignore"):
        vals = np.where(r4 > 0.0, r4 ** -0.25, 0.0)
    return Field(grid, vals)


def fundamental_solution_check(r_inner: float, r_outer: float, grid: Grid2D):
    """Max |Delta_G psi| over interior nodes with r_inner <= ||zeta|| < r_outer."""
    if not 0.0 < r_inner < r_outer:
        raise ValueError("need 0 < r_inner < r_outer")
    psi = fundamental_solution_values(grid)
    lap = apply_laplacian(psi).values
    X, Y = grid.meshes()
    norm = grushin_norm(X, Y)
    sel = (norm >= r_inner) & (norm < r_outer) & grid.interior()
    if not np.any(sel):
        raise ValueError("annulus contains no interior grid nodes")
    return {"max_residual": float(np.max(np.abs(lap[sel]))), "n_nodes": int(np.sum(sel))}


def trapezoid_weights(grid: Grid2D) -> np.ndarray:
    """Trapezoidal quadrature weights (1 interior, 1/2 edges, 1/4 corners)."""
    w = np.ones((grid.ny, grid.nx))
    w[0, :] *= 0.5
    w[-1, :] *= 0.5
    w[:, 0] *= 0.5
    w[:, -1] *= 0.5
    return w


def integrate(u: Field) -> float:
    """Trapezoidal integral of the field over the whole rectangle."""
    g = u.grid
    return float(np.sum(trapezoid_weights(g) * u.values) * g.hx * g.hy)


def masked_integral(u: Field, mask: np.ndarray) -> float:
    """Indicator-weighted integral over a node mask (exactly additive over disjoint masks)."""
    g = u.grid
    return float(np.sum(u.values[mask]) * g.hx * g.hy)
