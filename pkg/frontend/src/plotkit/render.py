"""Figure rendering: pure functions of the frozen CSV files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import SchemaError, field_to_grid, load_table

FIGSIZE = (6.4, 4.8)
DPI = 120


def render_heatmap(in_path, out_path) -> None:
    xs, ys, values = field_to_grid(load_table(in_path, "field"))
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    mesh = ax.pcolormesh(xs, ys, values, shading="nearest", cmap="RdBu_r",
                         vmin=-np.max(np.abs(values)) or -1,
                         vmax=np.max(np.abs(values)) or 1)
    fig.colorbar(mesh, ax=ax, label="u")
    if values.min() < 0.0 < values.max():
        ax.contour(xs, ys, values, levels=[0.0], colors="k", linewidths=1.2)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("solution heatmap with zero level set")
    _save(fig, out_path)


def render_energy(in_path, out_path) -> None:
    t = load_table(in_path, "energy")
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for col, marker in (("F", "o"), ("Wgt", "s")):
        vals = t[col]
        ax.loglog(t["r"], vals, marker=marker, label=col)
        if len(t["r"]) >= 2 and np.all(vals > 0):
            slope = np.polyfit(np.log(t["r"]), np.log(vals), 1)[0]
            ax.annotate(f"{col}: slope {slope:.2f}",
                        xy=(t["r"][-1], vals[-1]), xytext=(-80, 6),
                        textcoords="offset points")
    ax.set_xlabel("r")
    ax.set_ylabel("energy")
    ax.set_title("energy growth over balls")
    ax.legend()
    _save(fig, out_path)


def render_eigen(in_path, out_path) -> None:
    t = load_table(in_path, "eigen")
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 4.0), dpi=DPI)
    ax1.loglog(t["rho"], t["lambda"], "o-")
    ax1.set_xlabel(r"$\rho$")
    ax1.set_ylabel(r"$\lambda(\rho)$")
    ax1.set_title("principal eigenvalue")
    ax2.semilogx(t["rho"], t["lambda_rho_sq"], "s-")
    ax2.set_xlabel(r"$\rho$")
    ax2.set_ylabel(r"$\lambda(\rho)\,\rho^2$")
    ax2.set_title("scaled eigenvalue")
    fig.tight_layout()
    _save(fig, out_path)


def render_score(in_path, out_path) -> None:
    t = load_table(in_path, "score")
    fig = plt.figure(figsize=(5.4, 5.4), dpi=DPI)
    ax = fig.add_subplot(projection="polar")
    theta = np.concatenate([t["theta"], t["theta"] + np.pi, t["theta"][:1]])
    resid = np.concatenate([t["residual"], t["residual"], t["residual"][:1]])
    ax.plot(theta, resid, "o-")
    ax.set_title("one-dimensionality residual by direction")
    _save(fig, out_path)


def render_phase(in_path, out_path) -> None:
    t = load_table(in_path, "phase")
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 4.0), dpi=DPI)
    ax1.plot(t["h"], t["hp"], lw=1.0)
    ax1.set_xlabel("h")
    ax1.set_ylabel("h'")
    ax1.set_title("phase portrait")
    ax2.plot(t["t"], t["H"], lw=1.0)
    ax2.set_xlabel("t")
    ax2.set_ylabel("H")
    ax2.set_title("energy along the orbit")
    fig.tight_layout()
    _save(fig, out_path)


RENDERERS = {
    "heatmap": render_heatmap,
    "energy": render_energy,
    "eigen": render_eigen,
    "score": render_score,
    "phase": render_phase,
}


def render(kind: str, in_path, out_path) -> None:
    try:
        fn = RENDERERS[kind]
    except KeyError:
        raise SchemaError(f"unknown figure kind {kind!r}")
    fn(in_path, out_path)


def _save(fig, out_path) -> None:
    fig.savefig(out_path, metadata=_stable_metadata(str(out_path)))
    plt.close(fig)


def _stable_metadata(path: str):
    # pin metadata so repeated renders differ at most in format-mandated
    # timestamps (none for PNG, CreationDate for PDF)
    if path.endswith(".png"):
        return {"Software": "plotkit"}
    if path.endswith(".pdf"):
        return {"Creator": "plotkit", "Producer": "plotkit"}
    return None
