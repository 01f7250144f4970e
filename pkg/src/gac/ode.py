"""Phase-plane laboratory for h'' = W'(h): symplectic integration, orbit
classification, and the quantitative functionals behind the 1-D lemmas."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potential import DoubleWell, evaluate
from .tolerances import DEFAULT as TOL

ESCAPE = 10.0  # |h| beyond this is treated as an unbounded-orbit truncation


@dataclass
class OdeTrajectory:
    t: np.ndarray
    h: np.ndarray
    hp: np.ndarray
    dt: float
    truncated: bool = False

    def __post_init__(self):
        if len(self.t) < 2 or self.dt <= 0:
            raise ValueError("trajectory needs >= 2 samples and dt > 0")


def hamiltonian(traj: OdeTrajectory, w: DoubleWell) -> np.ndarray:
    """H(t) = |h'|^2 / 2 - W(h), conserved along exact orbits."""
    return 0.5 * traj.hp ** 2 - evaluate(w, traj.h, 0)


def hamiltonian_drift(traj: OdeTrajectory, w: DoubleWell) -> float:
    H = hamiltonian(traj, w)
    return float(np.max(np.abs(H - H[0])))


@dataclass
class OrbitClass:
    tag: str                     # constant | periodic | heteroclinic | unbounded
    period: float | None = None
    critical_times: tuple = ()
    limits: tuple = ()
    provisional: bool = False


def integrate(w: DoubleWell, h0: float, hp0: float, t_span: float,
              dt: float = TOL.ode_dt) -> OdeTrajectory:
    """Leapfrog (kick-drift-kick) trajectory of h'' = W'(h) from (h0, hp0).

    Negative t_span integrates backward.  Orbits escaping |h| > 10 are
    truncated and flagged, not treated as failures.
    """
    if not 0.0 < abs(dt) <= 0.1:
        raise ValueError("dt must lie in (0, 0.1]")
    if t_span == 0.0:
        raise ValueError("t_span must be nonzero")
    sign = 1.0 if t_span > 0 else -1.0
    step = sign * dt
    n = int(round(abs(t_span) / dt))
    h = np.empty(n + 1)
    hp = np.empty(n + 1)
    h[0], hp[0] = h0, hp0
    x, v = h0, hp0
    acc = evaluate(w, x, 1)
    truncated = False
    k = 0
    for k in range(1, n + 1):
        v_half = v + 0.5 * step * acc
        x = x + step * v_half
        acc = evaluate(w, x, 1)
        v = v_half + 0.5 * step * acc
        h[k], hp[k] = x, v
        if abs(x) > ESCAPE:
            truncated = True
            break
    last = k if truncated else n
    t = step * np.arange(last + 1)
    return OdeTrajectory(t=t, h=h[:last + 1], hp=hp[:last + 1], dt=dt,
                         truncated=truncated)


def _refine_critical_times(traj: OdeTrajectory):
    """Zeros of h' located by sign change plus 3-point parabolic refinement."""
    hp = traj.hp
    t = traj.t
    times = []
    for k in np.nonzero(np.sign(hp[:-1]) * np.sign(hp[1:]) < 0)[0]:
        t0, t1 = t[k], t[k + 1]
        tz = t0 - hp[k] * (t1 - t0) / (hp[k + 1] - hp[k])  # secant fallback
        if 0 < k < len(hp) - 1:
            # parabola through (t[k-1], t[k], t[k+1]); root inside the bracket
            c0, c1, c2 = np.polynomial.polynomial.polyfit(
                t[k - 1:k + 2] - t[k], hp[k - 1:k + 2], 2)
            disc = c1 * c1 - 4.0 * c0 * c2
            if c2 != 0 and disc >= 0:
                for root in ((-c1 + np.sqrt(disc)) / (2 * c2),
                             (-c1 - np.sqrt(disc)) / (2 * c2)):
                    tr = t[k] + root
                    if min(t0, t1) - 1e-15 <= tr <= max(t0, t1) + 1e-15:
                        tz = tr
                        break
        times.append(float(tz))
    # flat starts (hp exactly 0) count as critical points too
    if abs(hp[0]) < 1e-14:
        times.insert(0, float(t[0]))
    return times


def classify_orbit(traj: OdeTrajectory, w: DoubleWell = None,
                   equilibrium_tol: float = 1e-4) -> OrbitClass:
    """Constant / periodic / heteroclinic / unbounded tag with witnesses."""
    if traj.truncated:
        return OrbitClass(tag="unbounded", provisional=False)
    if float(np.max(np.abs(traj.hp))) < 1e-10:
        return OrbitClass(tag="constant", limits=(float(traj.h[0]), float(traj.h[0])))
    crit = _refine_critical_times(traj)
    if len(crit) >= 2:
        T = crit[1] - crit[0]
        return OrbitClass(tag="periodic", period=float(2 * abs(T)),
                          critical_times=tuple(crit))
    # one-signed h' approaching distinct equilibria at both ends
    tail = max(2, int(0.02 * len(traj.h)))
    lim_a = float(np.mean(traj.h[:tail]))
    lim_b = float(np.mean(traj.h[-tail:]))
    one_signed = np.all(traj.hp >= -1e-12) or np.all(traj.hp <= 1e-12)
    settled = (abs(traj.hp[0]) < equilibrium_tol and abs(traj.hp[-1]) < equilibrium_tol
               and abs(lim_b - lim_a) > equilibrium_tol)
    if one_signed and settled:
        return OrbitClass(tag="heteroclinic", limits=(lim_a, lim_b),
                          critical_times=tuple(crit))
    return OrbitClass(tag="heteroclinic" if one_signed else "periodic",
                      limits=(lim_a, lim_b), critical_times=tuple(crit),
                      provisional=True)


def heteroclinic_trajectory(w: DoubleWell, t_half: float = 25.0,
                            dt: float = TOL.ode_dt) -> OdeTrajectory:
    """The layer profile through h(0) = 0 with energy-exact initial speed
    h'(0) = sqrt(2 W(0)) (so H = 0, matching the heteroclinic level)."""
    hp0 = float(np.sqrt(2.0 * evaluate(w, 0.0, 0)))
    fwd = integrate(w, 0.0, hp0, t_half, dt)
    bwd = integrate(w, 0.0, hp0, -t_half, dt)
    # The discrete orbit shadows the separatrix only up to an O(dt^2) energy
    # defect, so it eventually overshoots the equilibrium and escapes at rate
    # exp(sqrt(W''(1)) t).  Clip both halves where the profile has settled to
    # within `settle` of the equilibrium: late enough for the variation and
    # energy functionals, early enough that the escape mode is still below
    # the profile-accuracy budget.
    wall = float(np.max(np.abs(np.polynomial.polynomial.polyroots(
        np.polynomial.polynomial.polyder(np.asarray(w.coeffs))).real)))
    settle = 3e-5

    def clip(traj):
        bad = np.flatnonzero(np.abs(traj.h) > wall - settle)
        k = int(bad[0]) if bad.size else len(traj.h)
        return traj.t[:k], traj.h[:k], traj.hp[:k]

    tf, hf, pf = clip(fwd)
    tb, hb, pb = clip(bwd)
    t = np.concatenate([tb[::-1], tf[1:]])
    h = np.concatenate([hb[::-1], hf[1:]])
    hp = np.concatenate([pb[::-1], pf[1:]])
    return OdeTrajectory(t=t, h=h, hp=hp, dt=dt)


def symmetry_check(w: DoubleWell, c: float, t_span: float = 10.0,
                   dt: float = TOL.ode_dt) -> float:
    """Max |h(t0 + t) - h(t0 - t)| for the orbit with h(t0) = c, h'(t0) = 0."""
    fwd = integrate(w, c, 0.0, t_span, dt)
    bwd = integrate(w, c, 0.0, -t_span, dt)
    n = min(len(fwd.h), len(bwd.h))
    return float(np.max(np.abs(fwd.h[:n] - bwd.h[:n])))


def trajectory_functionals(traj: OdeTrajectory, w: DoubleWell) -> dict:
    """sup/inf, discrete total variation, layer energy, and the interpolation
    inequality sides max|h'| <= 2(max|h| + max|h''|)."""
    h, hp = traj.h, traj.hp
    hpp = evaluate(w, h, 1)
    return {
        "sup_h": float(np.max(h)),
        "inf_h": float(np.min(h)),
        "total_variation": float(np.sum(np.abs(np.diff(h)))),
        "layer_energy": float(np.trapezoid(hp ** 2, traj.t)),
        "interp_lhs": float(np.max(np.abs(hp))),
        "interp_rhs": float(2.0 * (np.max(np.abs(h)) + np.max(np.abs(hpp)))),
    }


def monotone_segment_variations(traj: OdeTrajectory):
    """(sum |dh|, |h(b) - h(a)|) per maximal monotone segment; equal by telescoping."""
    dh = np.diff(traj.h)
    sign = np.sign(dh)
    sign[sign == 0] = 1
    breaks = np.nonzero(np.diff(sign))[0] + 1
    bounds = [0, *breaks.tolist(), len(dh)]
    out = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b > a:
            out.append((float(np.sum(np.abs(dh[a:b]))),
                        float(abs(traj.h[b] - traj.h[a]))))
    return out


def bounded_orbit_symmetry(traj: OdeTrajectory, w: DoubleWell) -> dict:
    """|sup h + inf h| for a bounded periodic orbit of an even potential."""
    cls = classify_orbit(traj, w)
    if cls.tag != "periodic":
        raise ValueError(f"orbit is {cls.tag}, not periodic")
    if float(np.max(np.abs(traj.h))) > 1.0 + 1e-12:
        raise ValueError("orbit leaves [-1, 1]")
    sup_h = float(np.max(traj.h))
    inf_h = float(np.min(traj.h))
    return {"sup_h": sup_h, "inf_h": inf_h, "defect": abs(sup_h + inf_h)}


def shooting_heteroclinic_speed(w: DoubleWell, lo: float = 0.0, hi: float = 2.0,
                                t_probe: float = 30.0, iters: int = 60) -> float:
    """Cross-check utility: bisect the initial speed at h = 0 that separates
    overshooting (|h| escapes past 1) from turning back."""
    def overshoots(v0):
        traj = integrate(w, 0.0, v0, t_probe, 1e-2)
        return bool(np.max(traj.h) > 1.0)

    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if overshoots(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def trajectory_to_csv(traj: OdeTrajectory, w: DoubleWell, path) -> None:
    H = hamiltonian(traj, w)
    rows = np.column_stack([traj.t, traj.h, traj.hp, H])
    np.savetxt(str(path), rows, delimiter=",", header="t,h,hp,H", comments="")
