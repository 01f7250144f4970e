import numpy as np
import pytest

from gac.grid import UPPER, constant_field, field_of, make_grid
from gac.linear_solver import (SolverConfig, SolverError, assemble,
                               solve_shifted_dirichlet)


@pytest.fixture
def grid():
    return make_grid(1.0, 9, 9, UPPER)


def test_constants_reproduced(grid):
    u, stats = solve_shifted_dirichlet(grid, grid.interior(), 2.0,
                                       constant_field(grid, 1.4),
                                       constant_field(grid, 0.7))
    np.testing.assert_allclose(u.values, 0.7, atol=1e-9)
    assert stats.rel_residual <= 1e-10


def test_manufactured_solution_order_two():
    R, M = 1.0, 1.0
    errs = []
    for n in (17, 33, 65):
        g = make_grid(R, n, n, UPPER)

        def u_star(X, Y):
            return np.sin(np.pi * X / R) * Y ** 2 * (R ** 2 - Y) ** 2

        def rhs(X, Y):
            uxx = -(np.pi / R) ** 2 * u_star(X, Y)
            uyy = np.sin(np.pi * X / R) * (2 * (R ** 2 - Y) ** 2
                                           - 8 * Y * (R ** 2 - Y) + 2 * Y ** 2)
            return M * u_star(X, Y) - (uxx + X ** 2 * uyy)

        u, _ = solve_shifted_dirichlet(g, g.interior(), M, field_of(g, rhs),
                                       field_of(g, u_star),
                                       SolverConfig(rel_tol=1e-12))
        errs.append(float(np.max(np.abs(u.values - field_of(g, u_star).values))))
    orders = np.log2(errs[0] / errs[1]), np.log2(errs[1] / errs[2])
    assert all(1.8 <= o <= 2.2 for o in orders), (errs, orders)


def test_maximum_principle(grid):
    # nonnegative rhs and boundary data give a nonnegative solution
    rng = np.random.default_rng(3)
    rhs = constant_field(grid, 0.0).values + rng.uniform(0, 1, (grid.ny, grid.nx))
    from gac.grid import Field
    u, _ = solve_shifted_dirichlet(grid, grid.interior(), 1.0,
                                   Field(grid, rhs), constant_field(grid, 0.0))
    assert float(np.min(u.values)) >= -1e-12


def test_comparison_principle(grid):
    # larger rhs gives a pointwise larger solution
    from gac.grid import Field
    bc = constant_field(grid, 0.0)
    f1 = field_of(grid, lambda X, Y: 1.0 + 0.2 * np.sin(3 * X))
    f2 = Field(grid, f1.values + 0.5)
    u1, _ = solve_shifted_dirichlet(grid, grid.interior(), 1.0, f1, bc)
    u2, _ = solve_shifted_dirichlet(grid, grid.interior(), 1.0, f2, bc)
    assert float(np.min(u2.values - u1.values)) >= -1e-12


def test_negative_shift_rejected(grid):
    with pytest.raises(Exception):
        assemble(grid, grid.interior(), -1.0)


def test_zero_shift_on_degenerate_line_rejected(grid):
    # M = 0 with the mask touching x = 0 has a singular diagonal block
    with pytest.raises(SolverError):
        solve_shifted_dirichlet(grid, grid.interior(), 0.0,
                                constant_field(grid, 1.0),
                                constant_field(grid, 0.0))


def test_mask_touching_boundary_rejected(grid):
    mask = np.ones((grid.ny, grid.nx), dtype=bool)
    with pytest.raises(Exception):
        assemble(grid, mask, 1.0)


def test_matrix_is_symmetric_m_matrix(grid):
    A, _ = assemble(grid, grid.interior(), 1.5)
    d = (A - A.T).tocoo()
    asym = np.max(np.abs(d.data)) if d.nnz else 0.0
    assert asym <= 1e-14
    dense = A.toarray()
    off = dense - np.diag(np.diag(dense))
    assert np.all(off <= 1e-14)
    assert np.all(np.diag(dense) > 0)


def test_solve_is_deterministic(grid):
    f = field_of(grid, lambda X, Y: np.cos(X) + Y)
    bc = field_of(grid, lambda X, Y: 0.1 * Y)
    u1, _ = solve_shifted_dirichlet(grid, grid.interior(), 1.0, f, bc)
    u2, _ = solve_shifted_dirichlet(grid, grid.interior(), 1.0, f, bc)
    np.testing.assert_array_equal(u1.values, u2.values)
