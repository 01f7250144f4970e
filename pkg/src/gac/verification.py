"""Certification of the monotonicity, stability, energy-growth, translation
and non-one-dimensionality claims on a computed solution."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .eigen import smallest_eigenpair
from .grid import FULL, Field, Grid2D, GrushinBall, ball_mask
from .linear_solver import assemble
from .operators import gradient_sq, masked_integral
from .potential import DoubleWell, evaluate
from .tolerances import DEFAULT as TOL


@dataclass
class VerificationReport:
    min_forward_y_diff: float = 0.0
    stability_lambda_min: float = 0.0
    stability_residual: float = 0.0
    energy_table: list = field(default_factory=list)      # rows (r, F_r, W_r)
    slope_F: float = 0.0
    slope_W: float = 0.0
    translation_table: list = field(default_factory=list)  # rows (t, E(t) - E(0))
    translation_min_normalized: float = 0.0
    score: float = 0.0
    score_best_angle: float = 0.0
    reference_score: float = 0.0
    vf_max_bracket: float = 0.0
    vf_min_grushin_grad: float = 0.0
    passes: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: TOL.as_dict())

    def to_dict(self) -> dict:
        return asdict(self)


def monotonicity_check(u: Field) -> dict:
    """Min over interior nodes of the forward y-difference; strict positivity
    is the discrete shadow of Tu > 0."""
    g = u.grid
    fd = (u.values[1:, 1:-1] - u.values[:-1, 1:-1]) / g.hy
    min_fd = float(np.min(fd))
    return {"min_fd": min_fd, "pass": min_fd > 0.0}


def window_mask(grid: Grid2D, x_half: float, y_half: float) -> np.ndarray:
    """Interior nodes of the centered sub-rectangle [-x_half, x_half] x [-y_half, y_half]."""
    X, Y = grid.meshes()
    m = (np.abs(X) <= x_half) & (np.abs(Y) <= y_half) & grid.interior()
    return m


def stability_spectrum(u: Field, w: DoubleWell, window: np.ndarray) -> dict:
    """Smallest Dirichlet eigenvalue of L = -Delta_G + W''(u) on the window.

    Inverse power iteration on L + s with s = 1 + max(0, -min W''(u)), which
    is positive definite by construction."""
    import scipy.sparse as sp

    g = u.grid
    c = evaluate(w, u.values, 2)
    s = 1.0 + max(0.0, -float(np.min(c[window])))
    A, _ = assemble(g, window, 0.0, c_diag=c + s)
    lam, _, rel_res, _ = smallest_eigenpair(A)
    lam_min = lam - s
    return {"lambda_min": lam_min, "residual": rel_res,
            "pass": lam_min >= TOL.stability_floor * (1.0 + abs(lam_min))}


def energy_density(u: Field, w: DoubleWell) -> Field:
    gsq = gradient_sq(u).values
    return Field(u.grid, 0.5 * gsq + evaluate(w, u.values, 0))


def weighted_density(u: Field) -> Field:
    g = u.grid
    X = g.xs[None, :]
    return Field(g, (X ** 2) * gradient_sq(u).values)


def energy_report(u: Field, w: DoubleWell, radii) -> list:
    """Rows (r, F_r, W_r): layer energy and the weighted x^2 |grad_G u|^2 over B_r(0)."""
    g = u.grid
    dens = energy_density(u, w)
    wdens = weighted_density(u)
    rows = []
    for r in sorted(float(v) for v in radii):
        if r > g.R or r ** 2 > g.y_hi:
            raise ValueError(f"ball of radius {r} exceeds the grid")
        mask = ball_mask(g, GrushinBall(0.0, 0.0, r))
        rows.append((r, masked_integral(dens, mask), masked_integral(wdens, mask)))
    return rows


def energy_growth_fit(table) -> dict:
    """Least-squares slopes of log F_r and log W_r against log r."""
    arr = np.asarray(table, dtype=float)
    if arr.shape[0] < 3 or arr[-1, 0] / arr[0, 0] < 4.0 - 1e-12:
        raise ValueError("need >= 3 radii spanning a factor >= 4")
    out = {}
    for name, col in (("slope_F", 1), ("slope_W", 2)):
        vals = arr[:, col]
        if np.any(vals <= 0.0):
            out[name] = 0.0
            out[name + "_flat"] = True
        else:
            out[name] = float(np.polyfit(np.log(arr[:, 0]), np.log(vals), 1)[0])
            out[name + "_flat"] = False
    return out


def translation_energy_check(u: Field, w: DoubleWell, R: float, shifts) -> dict:
    """E_R(t) - E_R(0) over vertical shifts (snapped to the grid spacing).

    E_R(t) is the ball-B_R(0) energy of u(., . + t)."""
    g = u.grid
    mask = ball_mask(g, GrushinBall(0.0, 0.0, R))
    rows = []
    for t in shifts:
        k = int(round(float(t) / g.hy))
        t_eff = k * g.hy
        if abs(k) >= g.ny:
            raise ValueError(f"shift {t} exceeds the grid margin")
        shifted = np.roll(u.values, -k, axis=0)
        if k > 0:
            shifted[-k:, :] = u.values[-1, :]
        elif k < 0:
            shifted[:-k, :] = u.values[0, :]
        ys_needed_hi = g.ys[mask.any(axis=1)].max() + t_eff
        ys_needed_lo = g.ys[mask.any(axis=1)].min() + t_eff
        if ys_needed_hi > g.y_hi + 1e-9 or ys_needed_lo < g.y_lo - 1e-9:
            raise ValueError(f"shift {t} exceeds the grid margin")
        e = masked_integral(energy_density(Field(g, shifted), w), mask)
        rows.append((t_eff, e))
    e0 = masked_integral(energy_density(u, w), mask)
    table = [(t, e - e0) for t, e in rows]
    min_norm = min((d / R ** 2 for _, d in table), default=0.0)
    return {"table": table, "min_normalized": min_norm, "E0": e0}


def one_dimensionality_score(u: Field, n_angles: int = 16) -> dict:
    """Best-direction residual of the one-dimensional ansatz u = g(a x + b y).

    For each direction, nodes are binned by their projection and the within-bin
    variance (summed, normalized by total variance) measures how far u is from
    a function of that single coordinate; the score is the minimum over angles."""
    if n_angles < 16:
        raise ValueError("need n_angles >= 16")
    g = u.grid
    X, Y = g.meshes()
    x = X.ravel()
    y = Y.ravel()
    v = u.values.ravel()
    total_var = float(np.var(v))
    if total_var == 0.0:
        return {"score": 0.0, "best_angle": 0.0, "constant": True}
    n_bins = int(np.ceil(np.sqrt(v.size)))
    best = np.inf
    best_angle = 0.0
    for theta in np.arange(n_angles) * np.pi / n_angles:
        t = np.cos(theta) * x + np.sin(theta) * y
        lo, hi = float(t.min()), float(t.max())
        if hi == lo:
            continue
        bins = np.clip(((t - lo) / (hi - lo) * n_bins).astype(np.int64), 0, n_bins - 1)
        sums = np.bincount(bins, weights=v, minlength=n_bins)
        sq = np.bincount(bins, weights=v * v, minlength=n_bins)
        cnt = np.bincount(bins, minlength=n_bins)
        nz = cnt > 0
        within = float(np.sum(sq[nz] - sums[nz] ** 2 / cnt[nz]))
        score = within / (total_var * v.size)
        if score < best:
            best = score
            best_angle = float(theta)
    return {"score": float(best), "best_angle": best_angle, "constant": False}


def synthetic_one_d_field(grid: Grid2D, theta: float, width: float = np.sqrt(2.0)) -> Field:
    """Reference 1-D layer profile tanh(t / width) along a fixed direction."""
    X, Y = grid.meshes()
    t = np.cos(theta) * X + np.sin(theta) * Y
    return Field(grid, np.tanh(t / width))


def vf_diagnostics(u: Field) -> dict:
    """The commutator bracket (TYu)(Xu) - (TXu)(Yu) and min |grad_G u|, the two
    hypotheses of the quoted one-dimensionality theorem (diagnostic only)."""
    g = u.grid
    v = u.values
    X = g.xs[None, :]
    ux = np.gradient(v, g.hx, axis=1)
    uy = np.gradient(v, g.hy, axis=0)
    x_uy = X * uy
    t_yu = np.gradient(x_uy, g.hy, axis=0)   # d/dy (x du/dy)
    t_xu = np.gradient(ux, g.hy, axis=0)     # d/dy (du/dx)
    bracket = t_yu * ux - t_xu * x_uy
    grad = np.sqrt(ux ** 2 + (X ** 2) * uy ** 2)
    inner = g.interior()
    return {"max_bracket": float(np.max(bracket[inner])),
            "min_grushin_grad": float(np.min(grad[inner]))}


def verify_solution(v_R: Field, w: DoubleWell, R: float,
                    layer_energy: float = 2.0 * np.sqrt(2.0) / 3.0,
                    n_angles: int = 16) -> VerificationReport:
    """Run the full battery on a constructed full-grid solution."""
    g = v_R.grid
    if g.kind != FULL:
        raise ValueError("verification expects a full-grid field")
    rep = VerificationReport()

    mono = monotonicity_check(v_R)
    rep.min_forward_y_diff = mono["min_fd"]

    window = window_mask(g, 0.75 * R, 0.25 * R ** 2)
    stab = stability_spectrum(v_R, w, window)
    rep.stability_lambda_min = stab["lambda_min"]
    rep.stability_residual = stab["residual"]

    radii = [R / 8.0, R / 6.0, R / 4.0, R / 2.0]
    rep.energy_table = energy_report(v_R, w, radii)
    fit = energy_growth_fit(rep.energy_table)
    rep.slope_F = fit["slope_F"]
    rep.slope_W = fit["slope_W"]

    shifts = [0.0, R ** 2 / 16.0, R ** 2 / 8.0, R ** 2 / 4.0,
              -R ** 2 / 16.0, -R ** 2 / 8.0, -R ** 2 / 4.0]
    trans = translation_energy_check(v_R, w, R, shifts)
    rep.translation_table = trans["table"]
    rep.translation_min_normalized = trans["min_normalized"]
    c_gate = TOL.translation_gate_factor * layer_energy

    sc = one_dimensionality_score(v_R, n_angles)
    rep.score = sc["score"]
    rep.score_best_angle = sc["best_angle"]
    theta_ref = np.pi / 4.0  # a sampled angle (n_angles multiple of 4)
    ref = synthetic_one_d_field(g, theta_ref)
    rep.reference_score = one_dimensionality_score(ref, n_angles)["score"]

    vf = vf_diagnostics(v_R)
    rep.vf_max_bracket = vf["max_bracket"]
    rep.vf_min_grushin_grad = vf["min_grushin_grad"]

    rep.passes = {
        "monotonicity": bool(mono["pass"]),
        "stability": bool(stab["pass"]),
        "energy_slope": bool(rep.slope_F <= TOL.energy_slope_max),
        "weighted_slope": bool(rep.slope_W <= TOL.weighted_slope_max),
        "translation_energy": bool(rep.translation_min_normalized >= -c_gate),
        "one_dimensionality": bool(rep.score >= TOL.score_ratio_min * rep.reference_score),
    }
    return rep


def score_csv_rows(u: Field, n_angles: int = 16):
    """Per-angle binned-variance residuals, for the theta,residual CSV."""
    g = u.grid
    X, Y = g.meshes()
    x, y, v = X.ravel(), Y.ravel(), u.values.ravel()
    total_var = float(np.var(v))
    n_bins = int(np.ceil(np.sqrt(v.size)))
    rows = []
    for theta in np.arange(n_angles) * np.pi / n_angles:
        t = np.cos(theta) * x + np.sin(theta) * y
        lo, hi = float(t.min()), float(t.max())
        bins = np.clip(((t - lo) / (hi - lo) * n_bins).astype(np.int64), 0, n_bins - 1)
        sums = np.bincount(bins, weights=v, minlength=n_bins)
        sq = np.bincount(bins, weights=v * v, minlength=n_bins)
        cnt = np.bincount(bins, minlength=n_bins)
        nz = cnt > 0
        within = float(np.sum(sq[nz] - sums[nz] ** 2 / cnt[nz]))
        rows.append((float(theta), within / (total_var * v.size) if total_var else 0.0))
    return rows
