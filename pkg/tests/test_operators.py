import numpy as np
import pytest

from gac import operators
from gac.grid import (FULL, GrushinBall, ball_mask, constant_field, field_of,
                      make_grid)
from gac.potential import STANDARD


@pytest.fixture
def grid():
    return make_grid(1.5, 17, 25, FULL)


def test_laplacian_exact_on_quadratics(grid):
    inner = grid.interior()
    X, Y = grid.meshes()
    cases = [
        (lambda X, Y: X ** 2, np.full_like(X, 2.0)),
        (lambda X, Y: Y ** 2, 2.0 * X ** 2),
        (lambda X, Y: X ** 2 * Y, 2.0 * Y),
        (lambda X, Y: np.full_like(X, 7.0), np.zeros_like(X)),
    ]
    for fn, expect in cases:
        lap = operators.apply_laplacian(field_of(grid, fn)).values
        np.testing.assert_allclose(lap[inner], expect[inner], atol=1e-9)


def test_laplacian_vanishes_on_degenerate_line(grid):
    # at x = 0 the y-second-difference has zero coefficient
    u = field_of(grid, lambda X, Y: np.sin(3 * Y))
    lap = operators.apply_laplacian(u).values
    i0 = (grid.nx - 1) // 2
    np.testing.assert_allclose(lap[1:-1, i0], 0.0, atol=1e-12)


def test_gradient_sq(grid):
    X, _ = grid.meshes()
    gsq = operators.gradient_sq(field_of(grid, lambda X, Y: Y)).values
    np.testing.assert_allclose(gsq, X ** 2, atol=1e-9)
    assert operators.gradient_sq(constant_field(grid, 2.0)).sup() < 1e-14


def test_pde_residual_on_equilibria(grid):
    for c in (-1.0, 0.0, 1.0):
        _, m = operators.pde_residual(constant_field(grid, c), STANDARD)
        assert m == pytest.approx(0.0, abs=1e-13)


def test_residual_second_order_on_layer():
    maxima = []
    for n in (33, 65, 129):
        g = make_grid(3.0, n, 2 * n - 1, FULL)
        u = field_of(g, lambda X, Y: np.tanh(X / np.sqrt(2.0)))
        maxima.append(operators.pde_residual(u, STANDARD)[1])
    order = np.log2(maxima[0] / maxima[1]), np.log2(maxima[1] / maxima[2])
    assert all(1.7 <= o <= 2.3 for o in order), (maxima, order)


def test_fundamental_solution_annulus_order():
    res = []
    for n in (41, 81, 161):
        g = make_grid(2.4, n, 4 * n - 3, FULL)
        res.append(operators.fundamental_solution_check(1.0, 2.0, g)["max_residual"])
    order = np.log2(res[0] / res[1]), np.log2(res[1] / res[2])
    assert all(1.5 <= o <= 2.5 for o in order), (res, order)


def test_trapezoid_weights(grid):
    wts = operators.trapezoid_weights(grid)
    assert wts[0, 0] == pytest.approx(0.25)
    assert wts[0, 1] == pytest.approx(0.5)
    assert wts[1, 1] == pytest.approx(1.0)
    # integral of 1 over the rectangle
    total = operators.integrate(constant_field(grid, 1.0))
    area = (grid.xs[-1] - grid.xs[0]) * (grid.ys[-1] - grid.ys[0])
    assert total == pytest.approx(area, rel=1e-12)


def test_masked_integral_additivity(grid):
    u = field_of(grid, lambda X, Y: np.cos(X) * (1 + Y ** 2))
    m_in = ball_mask(grid, GrushinBall(0.0, 0.0, 0.8))
    m_out = ball_mask(grid, GrushinBall(0.0, 0.0, 1.4))
    annulus = m_out & ~m_in
    lhs = operators.masked_integral(u, m_in) + operators.masked_integral(u, annulus)
    rhs = operators.masked_integral(u, m_out)
    assert lhs == pytest.approx(rhs, rel=1e-12)
