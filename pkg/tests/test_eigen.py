import numpy as np
import pytest

from gac import eigen
from gac.grid import FULL, GrushinBall, ball_mask, make_grid
from gac.linear_solver import assemble


@pytest.fixture(scope="module")
def small_case():
    g = make_grid(2.6, 21, 41, FULL)
    ball = GrushinBall(1.4, 0.0, 1.0)
    return g, ball


def test_matches_dense_oracle(small_case):
    g, ball = small_case
    mask = ball_mask(g, ball)
    assert int(mask.sum()) <= 400
    A, _ = assemble(g, mask, 0.0)
    lam_dense = eigen.dense_smallest(A)
    res = eigen.principal_eigenpair(g, ball)
    assert res.lambda_ == pytest.approx(lam_dense, rel=1e-6)
    assert res.residual <= 1e-6 * res.lambda_


def test_positivity_and_sign_structure(small_case):
    g, ball = small_case
    res = eigen.principal_eigenpair(g, ball)
    assert res.lambda_ > 0
    mask = ball_mask(g, ball)
    assert np.all(res.phi.values[mask] >= -1e-12)
    assert np.all(res.phi.values[~mask] == 0.0)
    assert float(np.max(res.phi.values)) == pytest.approx(1.0)


def test_height_invariance():
    # congruent masks at different heights give the same eigenvalue: the
    # operator coefficients depend on x only
    g = eigen.sweep_grid_for_ball(0.5, 1.5, nodes_across=28)
    ball0 = GrushinBall(0.5 + 1.5, 0.0, 1.5)
    lam0 = eigen.principal_eigenpair(g, ball0).lambda_
    shift = 8 * g.hy  # exact multiple of the spacing keeps masks congruent
    ball1 = GrushinBall(0.5 + 1.5, shift, 1.5)
    lam1 = eigen.principal_eigenpair(g, ball1).lambda_
    assert lam1 == pytest.approx(lam0, rel=1e-8)


def test_domain_monotonicity():
    g = eigen.sweep_grid_for_ball(0.5, 2.0, nodes_across=32)
    big = eigen.principal_eigenpair(g, GrushinBall(2.5, 0.0, 2.0)).lambda_
    small = eigen.principal_eigenpair(g, GrushinBall(2.5, 0.0, 1.2)).lambda_
    assert big < small


def test_scaling_sweep_bound():
    lam_disk = eigen.euclidean_disk_lambda1()
    # first zero of J_0 squared: j_{0,1}^2 = 5.7832... (coarse dense oracle)
    assert lam_disk == pytest.approx(5.7832, rel=0.05)
    rows = eigen.eigen_scaling_sweep(0.5, [2.0, 4.0], nodes_across=28)
    for rho, lam, lam_r2 in rows:
        assert lam > 0
        assert lam_r2 == pytest.approx(lam * rho ** 2, rel=1e-12)
        assert lam_r2 <= 10.0 * lam_disk


def test_empty_or_degenerate_masks_rejected():
    g = make_grid(2.0, 17, 33, FULL)
    with pytest.raises(Exception):
        # off-node center with a radius below the spacing: empty mask
        eigen.principal_eigenpair(g, GrushinBall(1.0 + g.hx / 3, g.hy / 3, 1e-6))
    with pytest.raises(Exception):
        eigen.principal_eigenpair(g, GrushinBall(0.0, 0.0, 1.0))  # touches x = 0


def test_sweep_csv(tmp_path):
    rows = [(2.0, 1.0, 4.0), (4.0, 0.3, 4.8)]
    path = tmp_path / "sweep.csv"
    eigen.write_sweep_csv(rows, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "rho,lambda,lambda_rho_sq"
    assert len(lines) == 3
