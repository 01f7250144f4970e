"""Double-well potentials and the shifted reaction term driving the iteration."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tolerances import DEFAULT as TOL


class PotentialError(ValueError):
    """Raised when a user-supplied potential violates the double-well contract."""


# W(s) = (1 - s^2)^2 / 4, coefficients low-to-high degree
_STANDARD_COEFFS = (0.25, 0.0, -0.5, 0.0, 0.25)


@dataclass(frozen=True)
class DoubleWell:
    """An even polynomial double-well potential W with wells at +-1.

    W must satisfy: W(+-1) = 0 <= W everywhere, W'(s) = 0 exactly at
    s in {-1, 0, +1} on [-1.5, 1.5], and W''(0), W''(+-1) != 0.
    """

    family: str = "standard"
    coeffs: tuple = field(default=_STANDARD_COEFFS)

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size < 5:
            raise PotentialError("potential needs polynomial degree >= 4")
        if np.max(np.abs(c[1::2])) > 0:
            raise PotentialError("potential must be an even polynomial")
        if abs(self._polyval(c, 1.0)) > 1e-12 or abs(self._polyval(c, -1.0)) > 1e-12:
            raise PotentialError("potential must vanish at s = +-1")
        s = np.linspace(-2.0, 2.0, 4001)
        if np.min(self._polyval(c, s)) < -1e-12:
            raise PotentialError("potential must be nonnegative on [-2, 2]")
        d1 = np.polynomial.polynomial.polyder(c)
        sd = np.linspace(-1.5, 1.5, 6001)
        vals = self._polyval(d1, sd)
        nz = np.abs(vals) > 1e-12  # samples landing on a root carry no sign
        s_nz, v_nz = sd[nz], vals[nz]
        flips = np.nonzero(np.sign(v_nz[:-1]) * np.sign(v_nz[1:]) < 0)[0]
        roots = 0.5 * (s_nz[flips] + s_nz[flips + 1])
        expected = np.array([-1.0, 0.0, 1.0])
        if len(roots) != 3 or np.max(np.abs(np.sort(roots) - expected)) > 1e-2:
            raise PotentialError("W' must change sign exactly at s in {-1, 0, +1}")
        d2 = np.polynomial.polynomial.polyder(d1)
        for s0 in (-1.0, 0.0, 1.0):
            if abs(self._polyval(d2, s0)) < 1e-10:
                raise PotentialError("wells and the hilltop must be nondegenerate")

    @staticmethod
    def _polyval(c, s):
        return np.polynomial.polynomial.polyval(s, c)

    def __call__(self, s, order: int = 0):
        return evaluate(self, s, order)


STANDARD = DoubleWell()


def from_config(spec) -> DoubleWell:
    """Build a potential from a config value: "standard" or a coefficient list."""
    if spec == "standard" or spec is None:
        return STANDARD
    if isinstance(spec, str):
        parts = [float(p) for p in spec.replace(",", " ").split()]
        return DoubleWell(family="custom", coeffs=tuple(parts))
    return DoubleWell(family="custom", coeffs=tuple(float(v) for v in spec))


def evaluate(w: DoubleWell, s, order: int = 0):
    """Evaluate W, W' or W'' at s (scalar or array)."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    c = np.asarray(w.coeffs, dtype=float)
    for _ in range(order):
        c = np.polynomial.polynomial.polyder(c)
    out = np.polynomial.polynomial.polyval(s, c)
    if np.isscalar(s):
        return float(out)
    return out


def reaction_constants(w: DoubleWell, interval=(-1.0, 1.0), margin_factor: float = TOL.margin_factor):
    """Lipschitz shift M > sup |f'| = sup |W''| on the interval, and l = |W''(0)|.

    M carries a safety margin (default 1.2x); l is the linearization limit
    lim_{s->0} |W'(s)|/s.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    if not (lo <= 0.0 <= hi):
        raise ValueError("interval must contain 0")
    if margin_factor < 1.2:
        raise ValueError("margin factor must be >= 1.2")
    s = np.linspace(lo, hi, 10001)
    d2 = np.polynomial.polynomial.polyder(np.polynomial.polynomial.polyder(
        np.asarray(w.coeffs, dtype=float)))
    # endpoint refinement: critical points of W'' inside the interval
    d3 = np.polynomial.polynomial.polyder(d2)
    crit = np.polynomial.polynomial.polyroots(d3)
    crit = crit[np.isreal(crit)].real
    crit = crit[(crit > lo) & (crit < hi)]
    pts = np.concatenate([s, crit, [lo, hi]])
    sup_d2 = float(np.max(np.abs(np.polynomial.polynomial.polyval(pts, d2))))
    ell = abs(evaluate(w, 0.0, 2))
    return {"M": margin_factor * sup_d2, "l": ell}


def shifted_reaction(w: DoubleWell, M: float, v):
    """g(v) = f(v) + M v = -W'(v) + M v; nondecreasing once M tops the Lipschitz constant."""
    return -evaluate(w, v, 1) + M * np.asarray(v, dtype=float) if not np.isscalar(v) \
        else -evaluate(w, v, 1) + M * v
