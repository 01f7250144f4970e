"""Monotone-iteration construction of the half-domain solution and its odd
extension: boundary data, eigenfunction subsolution, fixed-point loop."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .eigen import principal_eigenpair
from .grid import (UPPER, Field, Grid2D, GrushinBall, ball_mask,
                   default_node_counts, make_grid, reflect_odd)
from .linear_solver import SolverConfig, assemble, solve_shifted_dirichlet
from .operators import pde_residual
from .potential import DoubleWell, STANDARD, evaluate, reaction_constants, shifted_reaction
from .tolerances import DEFAULT as TOL


class GateError(RuntimeError):
    """The eigenvalue gate lambda_0 <= l/2 failed; the domain is too small."""


@dataclass(frozen=True)
class ConstructionConfig:
    R: float = 12.0
    nx: int | None = None
    ny: int | None = None
    a: float = 0.5
    margin_factor: float = TOL.margin_factor
    it_tol: float = TOL.it_tol
    max_outer_iters: int = TOL.max_outer_iters
    solver_rel_tol: float = TOL.solver_rel_tol
    relaxed_gate: bool = False
    potential: str = "standard"

    def resolved_counts(self):
        if self.nx is not None and self.ny is not None:
            return self.nx, self.ny
        nx, ny = default_node_counts(self.R)
        return (self.nx or nx), (self.ny or ny)

    def __post_init__(self):
        if self.it_tol <= self.solver_rel_tol:
            raise ValueError("it_tol must exceed the solver tolerance")


@dataclass
class ConstructionReport:
    R: float
    nx: int
    ny: int
    a: float
    rho: float
    lambda0: float
    eps: float
    M: float
    outer_iters: int
    increments: list = field(default_factory=list)
    violations: dict = field(default_factory=dict)
    fixed_point_residual: float = 0.0
    pde_residual: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def boundary_profile(g: Grid2D) -> Field:
    """Boundary data on the upper rectangle: 0 at the bottom, 1 at the top,
    psi(y) = y / R^2 on the sides (strictly increasing)."""
    if g.kind != UPPER:
        raise ValueError("boundary profile lives on an upper grid")
    vals = np.zeros((g.ny, g.nx))
    psi = g.ys / g.R ** 2
    vals[:, 0] = psi
    vals[:, -1] = psi
    vals[0, :] = 0.0
    vals[-1, :] = 1.0
    return Field(g, vals)


def admissible_eps(w: DoubleWell, lambda0: float, backoff: float = TOL.eps_backoff) -> float:
    """Largest eps with lambda0 * s <= |W'(s)| on (0, eps], backed off by 0.9.

    For the standard quartic this is 0.9 * sqrt(1 - lambda0).
    """
    # smallest positive root of -W'(s) - lambda0 s (W' <= 0 on (0, 1))
    c = np.asarray(w.coeffs, dtype=float)
    d1 = np.polynomial.polynomial.polyder(c)
    poly = -d1.copy()
    poly[1] -= lambda0
    roots = np.polynomial.polynomial.polyroots(poly)
    real = roots[np.abs(roots.imag) < 1e-12].real
    pos = real[(real > 1e-12) & (real <= 1.0 + 1e-12)]
    if len(pos) == 0:
        raise GateError(f"no admissible amplitude for lambda0 = {lambda0}")
    return backoff * float(np.min(pos))


def build_subsolution(g: Grid2D, w: DoubleWell, a: float = 0.5,
                      relaxed_gate: bool = False,
                      margin_factor: float = TOL.margin_factor) -> dict:
    """Eigenfunction bump v0 = eps * phi0 on the largest ball clear of {x = 0}.

    Gate: lambda0 <= l/2 (or lambda0 < l with relaxed_gate).  Raises GateError
    with advice to enlarge R when the gate fails.
    """
    if g.kind != UPPER:
        raise ValueError("subsolution lives on an upper grid")
    rho = (g.R - a) / 2.0
    ball = GrushinBall(x0=a + rho, y0=g.R ** 2 / 2.0, rho=rho)
    eig = principal_eigenpair(g, ball)
    ell = reaction_constants(w, margin_factor=margin_factor)["l"]
    gate = ell if relaxed_gate else ell / 2.0
    if eig.lambda_ > gate:
        raise GateError(
            f"lambda0 gate failed: lambda0 = {eig.lambda_:.6f} > {gate:.6f}; "
            "increase R or use --relaxed-gate")
    eps = admissible_eps(w, eig.lambda_)
    v0 = Field(g, eps * eig.phi.values)
    return {"v0": v0, "lambda0": eig.lambda_, "eps": eps, "ball": ball,
            "phi0": eig.phi, "eigen_residual": eig.residual}


def monotone_iterate(g: Grid2D, w: DoubleWell, M: float, v0: Field, bc: Field,
                     cfg: ConstructionConfig):
    """Iterate u_{k+1} = T(u_k), T the shifted Dirichlet solve with rhs g(u_k).

    Tracks sup-norm increments, ordering violations against (P2)/(P4) and the
    confinement (P3).  Stops at sup increment < it_tol."""
    interior = g.interior()
    scfg = SolverConfig(rel_tol=cfg.solver_rel_tol)
    system = assemble(g, interior, M)
    leak = TOL.ordering_leak_factor * cfg.solver_rel_tol

    u = Field(g, np.where(interior, v0.values, bc.values))
    increments = []
    worst_monotone = 0.0   # most negative nodewise increment seen
    worst_confine = 0.0    # largest excursion outside [0, 1]
    worst_p4 = 0.0         # most negative value of u_k - v0
    n_violations = 0
    converged = False
    outer = 0
    for outer in range(1, cfg.max_outer_iters + 1):
        rhs = Field(g, shifted_reaction(w, M, u.values))
        u_next, _ = solve_shifted_dirichlet(g, interior, M, rhs, bc, scfg,
                                            x0=u, system=system)
        delta = u_next.values - u.values
        inc = float(np.max(np.abs(delta[interior])))
        increments.append(inc)
        min_delta = float(np.min(delta[interior]))
        worst_monotone = min(worst_monotone, min_delta)
        if min_delta < -leak:
            n_violations += 1
        worst_confine = max(worst_confine,
                            float(np.max(u_next.values - 1.0)),
                            float(np.max(-u_next.values)))
        worst_p4 = min(worst_p4, float(np.min(u_next.values - v0.values)))
        u = u_next
        if inc < cfg.it_tol:
            converged = True
            break
    if not converged:
        raise RuntimeError(
            f"monotone iteration hit max_outer_iters = {cfg.max_outer_iters} "
            f"(last increment {increments[-1]:.3e})")

    # fixed-point residual: sup |T(u) - u| for the converged iterate
    rhs = Field(g, shifted_reaction(w, M, u.values))
    u_check, _ = solve_shifted_dirichlet(g, interior, M, rhs, bc, scfg,
                                         x0=u, system=system)
    fp_res = float(np.max(np.abs(u_check.values - u.values)))
    violations = {
        "ordering_count": n_violations,
        "ordering_max": abs(min(worst_monotone, 0.0)),
        "confinement_max": max(worst_confine, 0.0),
        "p4_max": abs(min(worst_p4, 0.0)),
    }
    return u, outer, increments, violations, fp_res


def assemble_full_solution(u_tilde: Field, w: DoubleWell):
    """Odd reflection to the full rectangle plus the interior PDE residual there."""
    v_R = reflect_odd(u_tilde)
    _, res = pde_residual(v_R, w)
    return {"v_R": v_R, "residual": res}


def construct(cfg: ConstructionConfig, w: DoubleWell = None):
    """Full pipeline: grid, boundary data, subsolution, iteration, reflection.

    Returns (report, fields) with fields holding u_tilde, v_R, v0, phi0."""
    w = w or STANDARD
    nx, ny = cfg.resolved_counts()
    g = make_grid(cfg.R, nx, ny, UPPER)
    bc = boundary_profile(g)
    sub = build_subsolution(g, w, cfg.a, cfg.relaxed_gate, cfg.margin_factor)
    M = reaction_constants(w, (-1.0, 1.0), cfg.margin_factor)["M"]
    u_tilde, outer, increments, violations, fp_res = monotone_iterate(
        g, w, M, sub["v0"], bc, cfg)
    full = assemble_full_solution(u_tilde, w)
    report = ConstructionReport(
        R=cfg.R, nx=nx, ny=ny, a=cfg.a, rho=sub["ball"].rho,
        lambda0=sub["lambda0"], eps=sub["eps"], M=M, outer_iters=outer,
        increments=increments, violations=violations,
        fixed_point_residual=fp_res, pde_residual=full["residual"])
    fields = {"u_tilde": u_tilde, "v_R": full["v_R"], "v0": sub["v0"],
              "phi0": sub["phi0"], "grid": g, "ball": sub["ball"]}
    return report, fields


def restriction_distance(f1: Field, f2: Field, half_width: float,
                         n: int = 41) -> float:
    """Sup distance between two full-grid fields sampled on a fixed comparison
    grid over Q_half_width (used for the R-stability trend)."""
    from .grid import sample_bilinear

    xs = np.linspace(-half_width, half_width, n)
    ys = np.linspace(-half_width ** 2, half_width ** 2, 2 * n - 1)
    X, Y = np.meshgrid(xs, ys)
    return float(np.max(np.abs(sample_bilinear(f1, X, Y) - sample_bilinear(f2, X, Y))))
