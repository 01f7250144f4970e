import numpy as np
import pytest
from hypothesis import given, strategies as st

from gac.potential import (STANDARD, DoubleWell, PotentialError, evaluate,
                           from_config, reaction_constants, shifted_reaction)


def test_standard_well_values():
    assert evaluate(STANDARD, 1.0, 0) == pytest.approx(0.0, abs=1e-15)
    assert evaluate(STANDARD, -1.0, 0) == pytest.approx(0.0, abs=1e-15)
    assert evaluate(STANDARD, 0.0, 0) == pytest.approx(0.25)
    assert evaluate(STANDARD, 0.0, 1) == pytest.approx(0.0, abs=1e-15)
    assert evaluate(STANDARD, 0.0, 2) == pytest.approx(-1.0)
    assert evaluate(STANDARD, 1.0, 2) == pytest.approx(2.0)


@given(st.floats(-2.0, 2.0))
def test_evenness_and_nonnegativity(s):
    assert evaluate(STANDARD, s, 0) == pytest.approx(evaluate(STANDARD, -s, 0),
                                                     abs=1e-12)
    assert evaluate(STANDARD, s, 0) >= -1e-15


def test_reaction_constants():
    rc = reaction_constants(STANDARD, (-1.0, 1.0))
    # sup |W''| = 2 on [-1, 1], margin factor 1.2
    assert rc["M"] == pytest.approx(2.4, rel=1e-6)
    assert rc["l"] == pytest.approx(1.0, rel=1e-9)
    assert reaction_constants(STANDARD, (-0.1, 0.1))["M"] >= 1.2 - 1e-12


def test_shifted_reaction_fixed_points_and_monotonicity():
    M = reaction_constants(STANDARD)["M"]
    for s in (-1.0, 0.0, 1.0):
        assert shifted_reaction(STANDARD, M, s) == pytest.approx(M * s)
    grid = np.linspace(-1, 1, 4001)
    g = shifted_reaction(STANDARD, M, grid)
    assert np.all(np.diff(g) >= -1e-14)


def test_shift_below_lipschitz_is_not_monotone():
    grid = np.linspace(-1, 1, 4001)
    g = shifted_reaction(STANDARD, 1.0, grid)
    assert np.any(np.diff(g) < 0)


def test_invalid_wells_rejected():
    with pytest.raises(PotentialError):
        DoubleWell(family="quartic", coeffs=(0.25, 0.1, -0.5, 0.0, 0.25))  # odd term
    with pytest.raises(PotentialError):
        DoubleWell(family="quartic", coeffs=(0.5, 0.0, -0.5, 0.0, 0.25))  # W(1) != 0
    with pytest.raises(PotentialError):
        DoubleWell(family="quartic", coeffs=(-0.25, 0.0, 0.5, 0.0, -0.25))  # W < 0


def test_from_config():
    assert from_config("standard") == STANDARD
    with pytest.raises(Exception):
        from_config("no-such-family")
