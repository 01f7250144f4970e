"""Command-line entry point: deterministic runs with JSON reports and CSVs.

Exit codes: 0 all gated checks pass, 2 a gated check fails, 1 usage or
configuration error (including the subsolution eigenvalue gate).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, construction, eigen, ode, reporting, verification
from .construction import ConstructionConfig, GateError
from .grid import load_field_csv
from .potential import STANDARD, DoubleWell, from_config
from .tolerances import DEFAULT as TOL

EXIT_OK, EXIT_CONFIG, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="gac", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, out_default):
        sp.add_argument("--out", type=Path, default=Path(out_default),
                        help="output directory for report.json and CSVs")
        sp.add_argument("--potential", default="standard",
                        help="potential family (currently: standard)")

    c = sub.add_parser("construct", help="build the half-domain solution, "
                       "reflect it, and verify every theorem gate")
    c.add_argument("--R", type=float, default=12.0)
    c.add_argument("--nx", type=int, default=None)
    c.add_argument("--ny", type=int, default=None)
    c.add_argument("--a", type=float, default=0.5)
    c.add_argument("--it-tol", type=float, default=TOL.it_tol)
    c.add_argument("--solver-tol", type=float, default=TOL.solver_rel_tol)
    c.add_argument("--relaxed-gate", action="store_true")
    add_common(c, "construct_out")

    v = sub.add_parser("verify", help="re-run theorem verification on a "
                       "previously written field CSV")
    v.add_argument("field_csv", type=Path)
    v.add_argument("--R", type=float, required=True)
    add_common(v, "verify_out")

    o = sub.add_parser("ode-suite", help="profile-equation lemma checks")
    add_common(o, "ode_out")

    e = sub.add_parser("eigen-sweep", help="principal eigenvalue vs ball radius")
    e.add_argument("--a", type=float, default=0.5)
    e.add_argument("--radii", type=float, nargs="+", default=[2.0, 4.0, 8.0])
    add_common(e, "eigen_out")

    g = sub.add_parser("energy-sweep", help="energy growth table for a field CSV")
    g.add_argument("field_csv", type=Path)
    g.add_argument("--R", type=float, required=True)
    add_common(g, "energy_out")

    s = sub.add_parser("selftest", help="run every worked-example desk check")
    return p


def _potential(name: str) -> DoubleWell:
    try:
        return from_config(name)
    except Exception as exc:
        raise UsageError(str(exc))


def _outdir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    probe = path / ".write_probe"
    try:
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise UsageError(f"output directory not writable: {exc}")
    return path


def _verification_artifacts(out: Path, v_R, w, R: float):
    rep = verification.verify_solution(v_R, w, R)
    reporting.write_csv(out / "energy.csv", "r,F,Wgt", rep.energy_table)
    reporting.write_csv(out / "score.csv", "theta,residual",
                        verification.score_csv_rows(v_R))
    return rep


def cmd_construct(args) -> int:
    w = _potential(args.potential)
    out = _outdir(args.out)
    cfg = ConstructionConfig(R=args.R, nx=args.nx, ny=args.ny, a=args.a,
                             it_tol=args.it_tol, solver_rel_tol=args.solver_tol,
                             relaxed_gate=args.relaxed_gate,
                             potential=args.potential)
    report, fields = construction.construct(cfg, w)
    fields["u_tilde"].to_csv(out / "field_half.csv")
    fields["v_R"].to_csv(out / "field.csv")
    vrep = _verification_artifacts(out, fields["v_R"], w, cfg.R)
    payload = {
        "config": {"command": "construct", "R": cfg.R, "nx": report.nx,
                   "ny": report.ny, "a": cfg.a, "it_tol": cfg.it_tol,
                   "solver_rel_tol": cfg.solver_rel_tol,
                   "relaxed_gate": cfg.relaxed_gate, "potential": cfg.potential},
        "construction": report.to_dict(),
        "verification": vrep.to_dict(),
    }
    reporting.write_report(out / "report.json", payload)
    ok = all(vrep.passes.values())
    for name, passed in sorted(vrep.passes.items()):
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    w = _potential(args.potential)
    out = _outdir(args.out)
    try:
        u = load_field_csv(args.field_csv)
    except Exception as exc:
        raise UsageError(f"cannot read field CSV {args.field_csv}: {exc}")
    vrep = _verification_artifacts(out, u, w, args.R)
    reporting.write_report(out / "report.json", {
        "config": {"command": "verify", "R": args.R,
                   "field_csv": str(args.field_csv), "potential": args.potential},
        "verification": vrep.to_dict(),
    })
    ok = all(vrep.passes.values())
    for name, passed in sorted(vrep.passes.items()):
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ode_suite(args) -> int:
    w = _potential(args.potential)
    out = _outdir(args.out)
    het = ode.heteroclinic_trajectory(w, t_half=25.0)
    f = ode.trajectory_functionals(het, w)
    drift = max(
        ode.hamiltonian_drift(ode.integrate(w, c, 0.0, 50.0, TOL.ode_dt), w)
        for c in (0.5, 0.9))
    small = ode.classify_orbit(ode.integrate(w, 0.01, 0.0, 30.0, TOL.ode_dt))
    sym = ode.symmetry_check(w, 0.5)
    tanh_err = float(np.max(np.abs(het.h - np.tanh(het.t / np.sqrt(2.0)))))
    bounded = ode.bounded_orbit_symmetry(
        ode.integrate(w, 0.5, 0.0, 50.0, TOL.ode_dt), w)
    checks = {
        "hamiltonian_drift": drift <= TOL.hamiltonian_drift_max,
        "heteroclinic_profile": tanh_err <= TOL.heteroclinic_sup_err,
        "total_variation": abs(f["total_variation"] - 2.0) <= 1e-4
                           and f["total_variation"] <= 4.0,
        "layer_energy": abs(f["layer_energy"] - 2 * np.sqrt(2) / 3) <= 1e-4,
        "orbit_symmetry_defect": bounded["defect"] <= TOL.orbit_defect_max,
        "small_amplitude_period": small.tag == "periodic"
            and abs(small.period - 2 * np.pi) <= TOL.period_rel_err * 2 * np.pi,
        "gradient_interpolation": f["interp_lhs"] <= f["interp_rhs"],
        "reflection_symmetry": sym <= 1e-8,
    }
    ode.trajectory_to_csv(het, w, out / "trajectory.csv")
    reporting.write_report(out / "report.json", {
        "config": {"command": "ode-suite", "potential": args.potential},
        "functionals": f,
        "hamiltonian_drift": drift,
        "heteroclinic_sup_error": tanh_err,
        "small_amplitude_period": small.period,
        "orbit_symmetry_defect": bounded["defect"],
        "reflection_symmetry_defect": sym,
        "checks": checks,
    })
    for name, passed in sorted(checks.items()):
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_eigen_sweep(args) -> int:
    _potential(args.potential)
    out = _outdir(args.out)
    if any(r <= 0 for r in args.radii):
        raise UsageError("radii must be positive")
    rows = eigen.eigen_scaling_sweep(args.a, args.radii)
    lam_disk = eigen.euclidean_disk_lambda1()
    bound = 10.0 * lam_disk
    ok = all(0 < lam and lam_r2 <= bound for _, lam, lam_r2 in rows)
    eigen.write_sweep_csv(rows, out / "sweep.csv")
    reporting.write_report(out / "report.json", {
        "config": {"command": "eigen-sweep", "a": args.a,
                   "radii": list(args.radii), "potential": args.potential},
        "rows": [list(r) for r in rows],
        "disk_lambda1": lam_disk,
        "bound": bound,
        "pass": ok,
    })
    print(f"{'PASS' if ok else 'FAIL'}  lambda*rho^2 <= 10*lambda1(disk)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_energy_sweep(args) -> int:
    w = _potential(args.potential)
    out = _outdir(args.out)
    try:
        u = load_field_csv(args.field_csv)
    except Exception as exc:
        raise UsageError(f"cannot read field CSV {args.field_csv}: {exc}")
    R = args.R
    radii = [R / 8, R / 6, R / 4, R / 2]
    table = verification.energy_report(u, w, radii)
    fit = verification.energy_growth_fit(table)
    ok = (fit["slope_F"] <= TOL.energy_slope_max
          and fit["slope_W"] <= TOL.weighted_slope_max)
    reporting.write_csv(out / "energy.csv", "r,F,Wgt", table)
    reporting.write_report(out / "report.json", {
        "config": {"command": "energy-sweep", "R": R,
                   "field_csv": str(args.field_csv), "potential": args.potential},
        "table": [list(r) for r in table],
        "fit": fit,
        "pass": ok,
    })
    print(f"{'PASS' if ok else 'FAIL'}  slope_F={fit['slope_F']:.3f} "
          f"slope_W={fit['slope_W']:.3f}")
    return EXIT_OK if ok else EXIT_FAIL


def dispatch(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "selftest":
            from . import selftest
            return EXIT_OK if selftest.run() == 0 else EXIT_FAIL
        handler = {
            "construct": cmd_construct,
            "verify": cmd_verify,
            "ode-suite": cmd_ode_suite,
            "eigen-sweep": cmd_eigen_sweep,
            "energy-sweep": cmd_energy_sweep,
        }[args.command]
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(dispatch())
