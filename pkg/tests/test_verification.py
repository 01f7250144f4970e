import numpy as np
import pytest

from gac import eigen, verification
from gac.grid import FULL, Field, constant_field, field_of, make_grid
from gac.linear_solver import assemble
from gac.potential import STANDARD, evaluate


def test_monotonicity_check():
    g = make_grid(2.0, 9, 17, FULL)
    assert verification.monotonicity_check(
        field_of(g, lambda X, Y: Y))["min_fd"] == pytest.approx(1.0)
    assert verification.monotonicity_check(
        field_of(g, lambda X, Y: np.tanh(Y)))["pass"]
    assert not verification.monotonicity_check(
        field_of(g, lambda X, Y: -Y))["pass"]


def test_stability_of_pure_phase_dense_cross_check():
    g = make_grid(2.0, 17, 33, FULL)
    window = verification.window_mask(g, 1.5, 3.0)
    r = verification.stability_spectrum(constant_field(g, 1.0), STANDARD, window)
    # W''(1) = 2 shifts the whole Dirichlet spectrum up by 2
    assert r["lambda_min"] >= 2.0 - 1e-6
    c = evaluate(STANDARD, np.ones((g.ny, g.nx)), 2)
    A, _ = assemble(g, window, 0.0, c_diag=c)
    assert r["lambda_min"] == pytest.approx(eigen.dense_smallest(A), abs=1e-6)


def test_zero_state_stability_changes_sign_with_window_size():
    g_small = make_grid(1.2, 13, 25, FULL)
    r_small = verification.stability_spectrum(
        constant_field(g_small, 0.0), STANDARD,
        verification.window_mask(g_small, 0.5, 0.5))
    g_big = make_grid(9.0, 31, 61, FULL)
    r_big = verification.stability_spectrum(
        constant_field(g_big, 0.0), STANDARD,
        verification.window_mask(g_big, 8.0, 60.0))
    assert r_small["lambda_min"] > 0 > r_big["lambda_min"]


def test_energy_report_and_additivity():
    g = make_grid(3.0, 65, 257, FULL)
    u = field_of(g, lambda X, Y: np.tanh(X))
    tab = verification.energy_report(u, STANDARD, [1.0, 2.0])
    assert tab[0][1] < tab[1][1]
    # additivity of the masked quadrature to 1e-12 relative
    from gac.grid import GrushinBall, ball_mask
    from gac.operators import masked_integral
    dens = verification.energy_density(u, STANDARD)
    m1 = ball_mask(g, GrushinBall(0.0, 0.0, 1.0))
    m2 = ball_mask(g, GrushinBall(0.0, 0.0, 2.0))
    assert (masked_integral(dens, m1) + masked_integral(dens, m2 & ~m1)
            == pytest.approx(masked_integral(dens, m2), rel=1e-12))


def test_energy_growth_fit_contract():
    with pytest.raises(ValueError):
        verification.energy_growth_fit([(1, 1, 1), (2, 4, 16), (3, 9, 81)])
    fit = verification.energy_growth_fit(
        [(1, 1, 1), (2, 4, 16), (4, 16, 256)])
    assert fit["slope_F"] == pytest.approx(2.0, abs=1e-12)
    assert fit["slope_W"] == pytest.approx(4.0, abs=1e-12)
    flat = verification.energy_growth_fit([(1, 0, 0), (2, 0, 0), (4, 0, 0)])
    assert flat["slope_F_flat"] and flat["slope_F"] == 0.0


def test_zero_state_slope_matches_ball_area_growth():
    # the reason only constructed solutions are gated: W(0) > 0 makes the
    # energy of the zero state track the ball area, which grows like r^3
    g = make_grid(6.0, 129, 513, FULL)
    tab = verification.energy_report(constant_field(g, 0.0), STANDARD,
                                     [0.75, 1.0, 1.5, 3.0])
    fit = verification.energy_growth_fit(tab)
    assert fit["slope_F"] == pytest.approx(3.0, abs=0.2)


def test_translation_energy():
    g = make_grid(3.0, 33, 129, FULL)
    u = field_of(g, lambda X, Y: np.tanh(X))
    r = verification.translation_energy_check(u, STANDARD, 2.0, [0.0, 1.0, -1.0])
    assert all(abs(d) < 1e-12 for _, d in r["table"])
    assert r["min_normalized"] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        verification.translation_energy_check(u, STANDARD, 2.0, [100.0])


def test_one_dimensionality_score_separates():
    g = make_grid(3.0, 129, 129, FULL)
    ref = verification.synthetic_one_d_field(g, np.pi / 4)
    assert verification.one_dimensionality_score(ref)["score"] <= 1e-3
    u2 = field_of(g, lambda X, Y: np.tanh(X) * np.tanh(Y))
    assert verification.one_dimensionality_score(u2)["score"] >= 0.05
    const = verification.one_dimensionality_score(constant_field(g, 2.0))
    assert const["constant"] and const["score"] == 0.0


def test_score_sign_invariance():
    g = make_grid(3.0, 65, 65, FULL)
    u = field_of(g, lambda X, Y: np.tanh(X) * np.tanh(Y) + 0.3 * X)
    s = verification.one_dimensionality_score(u)["score"]
    s_neg = verification.one_dimensionality_score(Field(g, -u.values))["score"]
    assert s == pytest.approx(s_neg, abs=1e-14)


def test_vf_diagnostics():
    g = make_grid(2.0, 17, 33, FULL)
    r1 = verification.vf_diagnostics(field_of(g, lambda X, Y: np.sin(X)))
    assert abs(r1["max_bracket"]) < 1e-12
    r2 = verification.vf_diagnostics(field_of(g, lambda X, Y: Y))
    assert r2["min_grushin_grad"] == pytest.approx(0.0, abs=1e-12)


def test_score_csv_rows():
    g = make_grid(2.0, 33, 33, FULL)
    u = field_of(g, lambda X, Y: np.tanh(X + Y))
    rows = verification.score_csv_rows(u, n_angles=8)
    assert len(rows) == 8
    for theta, res in rows:
        assert 0 <= theta < np.pi and res >= 0


def test_verify_solution_rejects_half_grid():
    g = make_grid(2.0, 17, 17, "upper")
    with pytest.raises(ValueError):
        verification.verify_solution(constant_field(g, 0.0), STANDARD, 2.0)
