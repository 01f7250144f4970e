"""Anisotropic grids on Q_R, Grushin geometry, and the odd-reflection map.

Node order is fixed: row-major with y as the outer index, i.e. node (i, j)
lives at flat index j*nx + i.  All CSV dumps follow that order.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

UPPER = "upper"
FULL = "full"


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class Grid2D:
    """Rectangular grid on (-R, R) x [0, R^2] (upper) or (-R, R) x [-R^2, R^2] (full)."""

    R: float
    nx: int
    ny: int
    kind: str

    def __post_init__(self):
        if self.R <= 0:
            raise GridError("R must be positive")
        if self.kind not in (UPPER, FULL):
            raise GridError(f"unknown grid kind {self.kind!r}")
        for n in (self.nx, self.ny):
            if n < 3 or n % 2 == 0:
                raise GridError("node counts must be odd and >= 3")

    @property
    def hx(self) -> float:
        return 2.0 * self.R / (self.nx - 1)

    @property
    def y_lo(self) -> float:
        return 0.0 if self.kind == UPPER else -self.R ** 2

    @property
    def y_hi(self) -> float:
        return self.R ** 2

    @property
    def hy(self) -> float:
        return (self.y_hi - self.y_lo) / (self.ny - 1)

    @property
    def xs(self) -> np.ndarray:
        return -self.R + self.hx * np.arange(self.nx)

    @property
    def ys(self) -> np.ndarray:
        return self.y_lo + self.hy * np.arange(self.ny)

    def meshes(self):
        """(X, Y) coordinate arrays of shape (ny, nx)."""
        return np.meshgrid(self.xs, self.ys)

    @property
    def n_nodes(self) -> int:
        return self.nx * self.ny

    def interior(self) -> np.ndarray:
        """Boolean (ny, nx) mask of non-boundary nodes."""
        m = np.zeros((self.ny, self.nx), dtype=bool)
        m[1:-1, 1:-1] = True
        return m


def make_grid(R: float, nx: int, ny: int, kind: str = UPPER) -> Grid2D:
    return Grid2D(R=float(R), nx=int(nx), ny=int(ny), kind=kind)


def default_node_counts(R: float, nodes_per_unit_x: float = 4.0):
    """Desk-scale defaults: hx ~ 1/nodes_per_unit_x, ny ~ 2*nx (domain is R^2 tall)."""
    nx = int(round(2 * R * nodes_per_unit_x)) + 1
    if nx % 2 == 0:
        nx += 1
    nx = max(nx, 9)
    ny = 2 * nx - 1
    return nx, ny


@dataclass(frozen=True)
class Field:
    """Scalar samples on a Grid2D, stored as a (ny, nx) array in node order."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.ny, self.grid.nx):
            raise GridError(f"field shape {v.shape} does not match grid "
                            f"({self.grid.ny}, {self.grid.nx})")
        if not np.all(np.isfinite(v)):
            raise GridError("field contains non-finite entries")
        object.__setattr__(self, "values", v)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_csv(self, path_or_buf) -> None:
        X, Y = self.grid.meshes()
        rows = np.column_stack([X.ravel(), Y.ravel(), self.values.ravel()])
        header = "x,y,value"
        if hasattr(path_or_buf, "write"):
            np.savetxt(path_or_buf, rows, delimiter=",", header=header, comments="")
        else:
            np.savetxt(str(path_or_buf), rows, delimiter=",", header=header, comments="")


def field_of(grid: Grid2D, fn) -> Field:
    X, Y = grid.meshes()
    return Field(grid, np.asarray(fn(X, Y), dtype=float) + np.zeros_like(X))


def constant_field(grid: Grid2D, c: float) -> Field:
    return Field(grid, np.full((grid.ny, grid.nx), float(c)))


def load_field_csv(path, grid: Grid2D = None) -> Field:
    """Load a field CSV (x,y,value).  Grid is reconstructed if not supplied."""
    data = np.loadtxt(str(path), delimiter=",", skiprows=1)
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    if grid is None:
        R = float(xs[-1])
        kind = UPPER if ys[0] >= 0 else FULL
        grid = Grid2D(R=R, nx=len(xs), ny=len(ys), kind=kind)
    vals = data[:, 2].reshape(grid.ny, grid.nx)
    return Field(grid, vals)


@dataclass(frozen=True)
class GrushinBall:
    x0: float
    y0: float
    rho: float

    def __post_init__(self):
        if self.rho <= 0:
            raise GridError("ball radius must be positive")


def grushin_norm(x, y):
    """The anisotropic gauge (x^4 + 4 y^2)^(1/4)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = (x ** 4 + 4.0 * y ** 2) ** 0.25
    if out.ndim == 0:
        return float(out)
    return out


def ball_mask(grid: Grid2D, ball: GrushinBall) -> np.ndarray:
    """Boolean (ny, nx) mask of nodes strictly inside the Grushin ball."""
    X, Y = grid.meshes()
    return grushin_norm(X - ball.x0, Y - ball.y0) < ball.rho


def reflect_odd(u: Field, trace_tol: float = 1e-10) -> Field:
    """Extend a zero-bottom-trace field on the upper grid oddly to the full grid."""
    g = u.grid
    if g.kind != UPPER:
        raise GridError("reflect_odd expects a field on an upper grid")
    trace = np.max(np.abs(u.values[0, :]))
    if trace > trace_tol:
        raise GridError(f"bottom trace {trace:.3e} exceeds {trace_tol:.0e}; "
                        "odd reflection is ill-defined")
    full = Grid2D(R=g.R, nx=g.nx, ny=2 * g.ny - 1, kind=FULL)
    vals = np.empty((full.ny, full.nx))
    vals[g.ny - 1:, :] = u.values
    vals[:g.ny - 1, :] = -u.values[:0:-1, :]
    vals[g.ny - 1, :] = 0.0
    return Field(full, vals)


def restrict_to_upper(v: Field) -> Field:
    """Inverse of reflect_odd: keep the y >= 0 half."""
    g = v.grid
    if g.kind != FULL:
        raise GridError("restrict_to_upper expects a full grid")
    half = (g.ny + 1) // 2
    upper = Grid2D(R=g.R, nx=g.nx, ny=half, kind=UPPER)
    return Field(upper, v.values[half - 1:, :].copy())


def coarsen_field(u: Field) -> Field:
    """Restriction to every other node in each direction (spacing doubles).

    Used for consistency checks: applying the coarse-spacing stencil to the
    restricted fine solution isolates the O(h^2) truncation error, which the
    fine solution's own stencil residual (driven to the iteration tolerance)
    cannot show.
    """
    g = u.grid
    nx2, ny2 = (g.nx + 1) // 2, (g.ny + 1) // 2
    if 2 * nx2 - 1 != g.nx or 2 * ny2 - 1 != g.ny or nx2 % 2 == 0 or ny2 % 2 == 0:
        raise GridError("coarsening requires node counts of the form 4k + 1")
    coarse = Grid2D(R=g.R, nx=nx2, ny=ny2, kind=g.kind)
    return Field(coarse, u.values[::2, ::2].copy())


def sample_bilinear(u: Field, xq: np.ndarray, yq: np.ndarray) -> np.ndarray:
    """Bilinear samples of the field at query points (used for cross-grid comparisons)."""
    from scipy.interpolate import RegularGridInterpolator

    interp = RegularGridInterpolator((u.grid.ys, u.grid.xs), u.values,
                                     method="linear", bounds_error=True)
    pts = np.column_stack([np.asarray(yq).ravel(), np.asarray(xq).ravel()])
    return interp(pts).reshape(np.asarray(xq).shape)
