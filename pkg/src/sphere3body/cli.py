"""Command-line entry point: solve, sweep, verify, and emit
machine-readable results.

Exit codes: 0 = success with solutions, 2 = success but empty/no
solution (or a verification failure), 1 = usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import equator as eq
from . import meridian as mer
from .dynamics import (
    MassTriple,
    SphericalState,
    angular_momentum,
    configuration_residuals,
    integrate,
)
from .geometry import SpherePoint, SphereRadius, arc_angle
from .potential import cotangent_potential, repulsive


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_masses(text: str) -> MassTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--masses expects m1,m2,m3")
    try:
        m1, m2, m3 = (float(p) for p in parts)
        return MassTriple(m1, m2, m3)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_grid(text: str) -> np.ndarray:
    # lo:hi:n inclusive grid
    try:
        lo, hi, n = text.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except ValueError:
        raise argparse.ArgumentTypeError("grid expects lo:hi:n")


def _add_common(p: argparse.ArgumentParser, masses_required: bool = True):
    p.add_argument("--masses", type=_parse_masses, required=masses_required,
                   help="m1,m2,m3 (strictly positive)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--potential", choices=["cotangent", "repulsive"],
                   default="cotangent")
    p.add_argument("--tol-residual", type=float, default=1e-9)
    p.add_argument("--tol-root", type=float, default=1e-13)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _potential_for(args, R: SphereRadius):
    pot = cotangent_potential(R)
    if args.potential == "repulsive":
        pot = repulsive(pot)
    return pot


# ---------------------------------------------------------------- equator


def cmd_equator(args) -> int:
    try:
        result = eq.solve_equator(args.masses)
    except eq.NoEquatorSolution as exc:
        payload = {
            "exists": False,
            "region": exc.result.region,
            "reason": exc.result.region,
            "violated": exc.result.violated,
        }
        _emit(json.dumps(payload, indent=2), args.out)
        return 2
    payload = {
        "exists": True,
        "region": eq.INTERIOR,
        "dphi_12": result.dphi_12,
        "dphi_23": result.dphi_23,
        "dphi_31": result.dphi_31,
        "dphi_over_pi": [result.dphi_12 / math.pi,
                         result.dphi_23 / math.pi,
                         result.dphi_31 / math.pi],
        "rho": result.rho,
        "neg_potential_energy": result.neg_potential_energy / args.radius,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


# ---------------------------------------------------------------- meridian


def _solution_record(sol: mer.MeridianSolution) -> dict:
    if sol.translation is not None:
        theta = list(sol.translation.thetas)
        theta_alt = list(sol.translation.thetas_alt)
    else:
        theta, _, _ = sol.residual_inputs()
        theta = list(theta)
        theta_alt = [t + math.pi for t in theta]
    return {
        "region": sol.region,
        "x": sol.x,
        "x_over_pi": sol.x / math.pi,
        "theta": theta,
        "theta_over_pi": [t / math.pi for t in theta],
        "theta_alt": theta_alt,
        "theta_alt_over_pi": [t / math.pi for t in theta_alt],
        "s": sol.s,
        "omega_squared": sol.omega_squared,
        "case": sol.case_tag,
        "residual": sol.residual_max,
    }


CSV_HEADER = ["a", "nu1", "nu2", "region", "x", "theta1", "theta2",
              "theta3", "s", "omega_squared", "residual"]


def cmd_meridian(args) -> int:
    if not 0.0 < args.a < math.pi:
        print(f"error: --a must lie in (0, pi), got {args.a}", file=sys.stderr)
        return 1
    R = SphereRadius(args.radius)
    pot = _potential_for(args, R)
    opts = mer.ScanOptions(root_xtol=args.tol_root, residual_tol=args.tol_residual)
    solutions = mer.find_meridian_rotators(args.a, args.masses, opts, pot, R)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_HEADER)
        for sol in solutions:
            rec = _solution_record(sol)
            writer.writerow([
                _fmt(args.a), _fmt(args.masses.nu1), _fmt(args.masses.nu2),
                rec["region"], _fmt(rec["x"]),
                _fmt(rec["theta"][0]), _fmt(rec["theta"][1]), _fmt(rec["theta"][2]),
                rec["s"],
                "" if rec["omega_squared"] is None else _fmt(rec["omega_squared"]),
                _fmt(rec["residual"]),
            ])
        _emit(buf.getvalue(), args.out)
    else:
        payload = {
            "metadata": {
                "masses": list(args.masses.as_tuple()),
                "a": args.a,
                "radius": args.radius,
                "potential": args.potential,
            },
            "solutions": [_solution_record(s) for s in solutions],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    return 0 if solutions else 2


# ---------------------------------------------------------------- sweep


def cmd_sweep(args) -> int:
    a_grid = args.a_grid
    nu1_grid = args.nu1_grid
    nu2_grid = args.nu2_grid
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["a", "nu1", "nu2", "count",
                     "count_I", "count_II", "count_III", "count_IV"])
    max_count = 0
    argmax = None
    for a in a_grid:
        per_region = mer.count_rotators_grid_regions(
            a, nu1_grid, nu2_grid, args.samples)
        total = sum(per_region.values())
        for i, nu1 in enumerate(nu1_grid):
            for j, nu2 in enumerate(nu2_grid):
                c = int(total[i, j])
                if c > max_count:
                    max_count = c
                    argmax = (a, nu1, nu2)
                writer.writerow(
                    [_fmt(a), _fmt(nu1), _fmt(nu2), c]
                    + [int(per_region[r][i, j]) for r in mer.REGIONS]
                )
    writer.writerow(["# max_count", _fmt(argmax[0]), _fmt(argmax[1]),
                     max_count, "", "", "", ""])
    _emit(buf.getvalue(), args.out)
    return 0


# ---------------------------------------------------------------- verify


def _sigma_drift(thetas, omega, masses, pot, R, periods=1.0, steps=4000):
    """Integrate the configuration and report the max drift of the three
    mutual arc angles, plus the relative drift of |c|."""
    period = 2.0 * math.pi / omega if omega > 0 else 10.0
    t_end = periods * period
    state = SphericalState(
        points=tuple(SpherePoint(t % (2 * math.pi), 0.0) for t in thetas),
        theta_dot=(0.0, 0.0, 0.0),
        phi_dot=(omega, omega, omega),
        R=R,
    )
    traj = integrate(state, masses, pot, t_end, t_end / steps, store_every=50)
    if traj.error:
        return math.inf, math.inf, traj.error

    def sigmas(th, ph):
        pts = [SpherePoint(th[k], ph[k]) for k in range(3)]
        return [arc_angle(pts[i], pts[j]) for i, j in ((0, 1), (1, 2), (2, 0))]

    ref = sigmas(traj.thetas[0], traj.phis[0])
    drift = 0.0
    for th, ph in zip(traj.thetas, traj.phis):
        cur = sigmas(th, ph)
        drift = max(drift, max(abs(c - r) for c, r in zip(cur, ref)))
    return drift, traj.c_drift, None


def cmd_verify(args) -> int:
    try:
        with open(args.solutions) as fh:
            data = json.load(fh)
        meta = data["metadata"]
        masses = MassTriple(*meta["masses"])
        R = SphereRadius(meta["radius"])
        records = data["solutions"]
    except (OSError, KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: cannot parse {args.solutions}: {exc}", file=sys.stderr)
        return 1
    pot = cotangent_potential(R)
    if meta.get("potential") == "repulsive":
        pot = repulsive(pot)

    reports = []
    all_pass = True
    for rec in records:
        thetas = tuple(rec["theta"])
        omega2 = rec["omega_squared"]
        omega = 0.0 if omega2 is None else math.sqrt(omega2)
        res = configuration_residuals(thetas, (0.0, 0.0, 0.0), omega,
                                      masses, pot, R)
        residual = float(np.max(np.abs(res)))
        state = SphericalState(
            points=tuple(SpherePoint(t, 0.0) for t in thetas),
            theta_dot=(0.0, 0.0, 0.0),
            phi_dot=(omega, omega, omega),
            R=R,
        )
        c = angular_momentum(state, masses)
        drift, c_drift, err = (math.nan, math.nan, None)
        if args.integrate:
            drift, c_drift, err = _sigma_drift(thetas, omega, masses, pot, R)
        ok = residual <= args.tol_residual and err is None
        if args.integrate:
            ok = ok and drift <= args.tol_sigma
        all_pass = all_pass and ok
        reports.append({
            "x": rec.get("x"),
            "residual": residual,
            "cx": c.cx,
            "cy": c.cy,
            "sigma_drift": drift,
            "c_drift": c_drift,
            "pass": bool(ok),
            **({"error": err} if err else {}),
        })
    payload = {"count": len(reports), "all_pass": all_pass, "solutions": reports}
    _emit(json.dumps(payload, indent=2), args.out)
    return 0 if all_pass else 2


# ---------------------------------------------------------------- euler-limit


def cmd_euler_limit(args) -> int:
    R_values = sorted(float(r) for r in args.R_list.split(","))
    report = mer.euler_limit_check(args.masses, args.r21, R_values)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["R", "max_coeff_deviation", "root_deviation"])
        for row in report.rows:
            writer.writerow([_fmt(row.R), _fmt(row.max_coeff_deviation),
                             _fmt(row.root_deviation)])
        writer.writerow(["# order_estimate", _fmt(report.order_estimate), ""])
        _emit(buf.getvalue(), args.out)
    else:
        payload = {
            "quintic_coefficients": report.quintic_coefficients,
            "quintic_root": report.quintic_root,
            "order_estimate": report.order_estimate,
            "rows": [
                {"R": r.R, "max_coeff_deviation": r.max_coeff_deviation,
                 "root_deviation": r.root_deviation}
                for r in report.rows
            ],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere3body",
        description="Relative equilibria of the three-body problem on the "
                    "two-sphere (cotangent potential).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equator", help="closed-form equator RE")
    _add_common(p)
    p.set_defaults(func=cmd_equator)

    p = sub.add_parser("meridian", help="rigid rotators on a rotating meridian")
    _add_common(p)
    p.add_argument("--a", type=float, required=True,
                   help="theta2 - theta1 in radians, in (0, pi)")
    p.set_defaults(func=cmd_meridian)

    p = sub.add_parser("sweep", help="solution counts over a parameter grid")
    _add_common(p, masses_required=False)
    p.add_argument("--a-grid", type=_parse_grid, default=_parse_grid("0.15:3.0:20"))
    p.add_argument("--nu1-grid", type=_parse_grid, default=_parse_grid("0.1:10:50"))
    p.add_argument("--nu2-grid", type=_parse_grid, default=_parse_grid("0.1:10:50"))
    p.add_argument("--samples", type=int, default=400,
                   help="x samples per region for the coarse counter")
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("verify", help="re-check a meridian solution file")
    p.add_argument("solutions", help="JSON file produced by the meridian command")
    p.add_argument("--tol-residual", type=float, default=1e-9)
    p.add_argument("--tol-sigma", type=float, default=1e-6)
    p.add_argument("--integrate", action="store_true",
                   help="also integrate one period and report drifts")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("euler-limit", help="flat-space limit convergence check")
    _add_common(p)
    p.add_argument("--r21", type=float, default=1.0,
                   help="fixed arc distance between bodies 1 and 2")
    p.add_argument("--R-list", default="100,1000,10000",
                   help="comma-separated sphere radii, ascending")
    p.set_defaults(func=cmd_euler_limit)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
