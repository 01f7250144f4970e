"""Central registry of every tolerance and gate constant used by the suite.

Reports echo this block verbatim so a pass/fail verdict is always auditable
against the exact thresholds that produced it.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Tolerances:
    # linear solver
    solver_rel_tol: float = 1e-10
    ordering_leak_factor: float = 10.0  # violations below leak_factor*rel_tol are solver noise

    # monotone iteration
    it_tol: float = 1e-8
    max_outer_iters: int = 500

    # eigensolver
    eigen_shift: float = 1e-8
    eigen_residual_rel: float = 1e-6
    eigen_rq_stall_rel: float = 1e-10
    eigen_max_iters: int = 400

    # gates derived from the reaction term
    margin_factor: float = 1.2   # safety factor on the Lipschitz bound M
    eps_backoff: float = 0.9     # fraction of the largest admissible subsolution amplitude

    # verification gates
    stability_floor: float = -1e-6
    energy_slope_max: float = 2.3
    weighted_slope_max: float = 4.3
    translation_gate_factor: float = 3.0  # times the 1-D layer energy
    score_ratio_min: float = 100.0

    # ODE suite
    ode_dt: float = 1e-3
    hamiltonian_drift_max: float = 1e-6
    heteroclinic_sup_err: float = 1e-4
    orbit_defect_max: float = 1e-6
    period_rel_err: float = 0.01

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Tolerances()
