"""Command-line front end.

Usage examples::

    cavity1d coeffs --q 1 --mirror perfect
    cavity1d coeffs --mirror lorentzian:omega=100 --sweep Omega:10:1000:3:log --out coeffs.csv
    cavity1d force --mirror lorentzian:omega=10 --sweep q:0.5:2:16
    cavity1d spectrum --q 1 --mirror perfect --omega-tau-max 12 --steps 2000 --out spec.csv
    cavity1d simulate --trajectory accel --a 1e-9 --ntau 32 --duration 192 --out force.csv
    cavity1d rigidbody --a 1e-6 --duration 100 --dt 0.05 --out trace.csv
    cavity1d verify --suite all --mirror lorentzian:omega=100 --q 1

Exit codes: 0 all requested checks passed, 1 numerical/check failure,
2 usage error. CSV output is deterministic: identical configuration yields
byte-identical files (floats printed with 17 significant digits).
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .config import CavityConfig, units_by_name
from .errors import CavityError, PoleError, PreconditionError
from .mirrors import PerfectMirror, parse_mirror_spec, verify_physicality
from .quasistatic import (casimir_energy_perfect, casimir_force_partial,
                          coefficients_partial, coefficients_perfect,
                          global_mass_correction)
from .spectral import chi_A, chi_perfect_grid
from .rigidbody import RigidBodyState, simulate_accelerated_cavity
from . import timedomain as td


def _fmt(x) -> str:
    return f"{x:.17g}"


def _write_csv(path, header, rows, fmt="csv"):
    if fmt == "json":
        records = [{k: v for k, v in zip(header, row)} for row in rows]
        text = json.dumps(records, indent=2, default=str) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v)
                                  for v in row))
        text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_manifest(path, manifest):
    if path is None:
        return
    manifest = dict(manifest, version=__version__)
    with open(str(path) + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


@dataclass
class Check:
    name: str
    lhs: float
    rhs: float
    tolerance: float

    @property
    def gap(self) -> float:
        # rhs == 0 marks a residual check: lhs is already a relative quantity
        if self.rhs == 0.0:
            return abs(self.lhs)
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs))

    @property
    def passed(self) -> bool:
        return self.gap <= self.tolerance


def emit_report(checks, stream=sys.stdout):
    """Print one verdict row per identity check; return overall pass."""
    if not checks:
        stream.write("no checks requested\n")
        return True
    header = f"{'check':<28}{'lhs':>24}{'rhs':>24}{'rel gap':>12}{'tol':>10}  verdict"
    stream.write(header + "\n")
    stream.write("-" * len(header) + "\n")
    ok = True
    for ch in checks:
        verdict = "pass" if ch.passed else "FAIL"
        ok = ok and ch.passed
        stream.write(f"{ch.name:<28}{ch.lhs:>24.15g}{ch.rhs:>24.15g}"
                     f"{ch.gap:>12.3e}{ch.tolerance:>10.1e}  {verdict}\n")
    return ok


def _mirrors_from_args(args):
    spec1 = args.mirror1 or args.mirror
    spec2 = args.mirror2 or args.mirror
    return parse_mirror_spec(spec1), parse_mirror_spec(spec2)


def _config_from_args(args, q=None, omega=None):
    m1, m2 = _mirrors_from_args(args)
    if omega is not None:
        for m in (m1, m2):
            if hasattr(m, "omega_c"):
                m.omega_c = float(omega)
    return CavityConfig(q if q is not None else args.q, m1, m2,
                        units_by_name(args.units))


def _sweep_values(args):
    """Return list of (q, omega) sweep points; (args.q, None) when no sweep."""
    if not args.sweep:
        return [(args.q, None)], None
    parts = args.sweep.split(":")
    if len(parts) not in (4, 5):
        raise CavityError(f"bad sweep spec {args.sweep!r}; "
                          "expected param:min:max:steps[:log]")
    param, lo, hi, steps = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    log = len(parts) == 5 and parts[4] == "log"
    if param not in ("q", "Omega"):
        raise CavityError(f"sweep parameter must be q or Omega, got {param!r}")
    if lo <= 0 or hi <= 0 or steps < 1:
        raise CavityError("sweep bounds must be positive and steps >= 1")
    if steps == 1:
        vals = [lo]
    elif log:
        vals = list(np.geomspace(lo, hi, steps))
    else:
        vals = list(np.linspace(lo, hi, steps))
    if param == "q":
        return [(v, None) for v in vals], param
    return [(args.q, v) for v in vals], param


def _coeffs_point(payload):
    args, (q, omega) = payload
    config = _config_from_args(args, q=q, omega=omega)
    perfect = isinstance(config.mirror1, PerfectMirror) and isinstance(config.mirror2, PerfectMirror)
    if perfect:
        co = coefficients_perfect(config)
        stat = casimir_energy_perfect(config.q, config.units)
        target = 2.0 * stat.U / config.units.c ** 2
        omega_c = float("inf")
    else:
        co = coefficients_partial(config, rel_tol=args.tol)
        stat = casimir_force_partial(config)
        target = stat.delta_m
        omega_c = config.mirror1.omega_c
    gap = abs(co.mu_sum - target) / abs(target)
    row = (config.q, omega_c,
           float(co.kappa[0, 0]), float(co.kappa[0, 1]),
           float(co.lam[0, 0]), float(co.lam[0, 1]),
           float(co.mu[0, 0]), float(co.mu[0, 1]),
           co.mu_sum, stat.F, gap)
    return row, co.achieved_tolerance, gap


def cmd_coeffs(args):
    points, _ = _sweep_values(args)
    payloads = [(args, pt) for pt in points]
    if args.workers > 1 and len(points) > 1:
        with multiprocessing.Pool(args.workers) as pool:
            results = pool.map(_coeffs_point, payloads)
    else:
        results = [_coeffs_point(p) for p in payloads]
    header = ["q", "omega_cutoff", "kappa11", "kappa12", "lambda11", "lambda12",
              "mu11", "mu12", "mu_sum", "F", "mu_identity_gap"]
    rows = [r for r, _, _ in results]
    _write_csv(args.out, header, rows, fmt=args.format)
    achieved = max(a for _, a, _ in results)
    worst_gap = max(g for _, _, g in results)
    check_tol = max(args.tol, 1e-12) if rows and rows[0][1] != float("inf") else 1e-12
    checks = [Check("mu_sum_vs_minus_2Fq", worst_gap, 0.0, max(check_tol, 1e-6))]
    ok = emit_report(checks, sys.stderr if args.out is None else sys.stdout)
    _write_manifest(args.out, {
        "command": "coeffs", "points": len(rows),
        "tolerance_requested": args.tol, "tolerance_achieved": achieved,
        "checks": [{"name": c.name, "gap": c.gap, "passed": c.passed} for c in checks],
    })
    return 0 if ok else 1


def _force_point(payload):
    args, (q, omega) = payload
    config = _config_from_args(args, q=q, omega=omega)
    if isinstance(config.mirror1, PerfectMirror):
        stat = casimir_energy_perfect(config.q, config.units)
        omega_c = float("inf")
    else:
        stat = casimir_force_partial(config)
        omega_c = config.mirror1.omega_c
    return (config.q, omega_c, stat.F, stat.E_f, stat.delta_m), stat.achieved_tolerance


def cmd_force(args):
    points, _ = _sweep_values(args)
    payloads = [(args, pt) for pt in points]
    if args.workers > 1 and len(points) > 1:
        with multiprocessing.Pool(args.workers) as pool:
            results = pool.map(_force_point, payloads)
    else:
        results = [_force_point(p) for p in payloads]
    _write_csv(args.out, ["q", "omega_cutoff", "F", "E_f", "delta_m"],
               [r for r, _ in results], fmt=args.format)
    _write_manifest(args.out, {
        "command": "force", "points": len(results),
        "tolerance_requested": args.tol,
        "tolerance_achieved": max(a for _, a in results),
    })
    return 0


def cmd_spectrum(args):
    config = _config_from_args(args)
    tau = config.tau
    omegas = np.linspace(args.omega_tau_max / args.steps, args.omega_tau_max,
                         args.steps) / tau
    perfect = isinstance(config.mirror1, PerfectMirror) and isinstance(config.mirror2, PerfectMirror)
    poles = []
    if perfect:
        chi11, chi12, mask = chi_perfect_grid(config, omegas)
        for m in range(2, int(args.omega_tau_max / np.pi) + 1):
            poles.append({"resonance_index": m, "omega": m * np.pi / tau})
        chi_sum = 2.0 * (chi11 + chi12)
        chi11 = np.where(mask, np.nan + 0j, chi11)
        chi12 = np.where(mask, np.nan + 0j, chi12)
        chi_sum = np.where(mask, np.nan + 0j, chi_sum)
    else:
        chi11 = np.array([chi_A(config, 1, 1, w, rel_tol=args.tol) for w in omegas])
        chi12 = np.array([chi_A(config, 1, 2, w, rel_tol=args.tol) for w in omegas])
        chi_sum = 2.0 * (chi11 + chi12)
    rows = [(float(w), float(c11.real), float(c11.imag), float(c12.real),
             float(c12.imag), float(cs.real), float(cs.imag))
            for w, c11, c12, cs in zip(omegas, chi11, chi12, chi_sum)]
    _write_csv(args.out, ["omega", "re_chi11", "im_chi11", "re_chi12",
                          "im_chi12", "re_chi_sum", "im_chi_sum"], rows,
               fmt=args.format)
    _write_manifest(args.out, {
        "command": "spectrum", "units": config.units.name, "q": config.q,
        "mirror1": config.mirror1.label, "mirror2": config.mirror2.label,
        "perfect": perfect, "pole_annotations": poles,
        "note": "partial-mirror spectra show the antisymmetric part chi^A only",
    })
    return 0


def cmd_simulate(args):
    config = _config_from_args(args)
    tau = config.tau
    dt = tau / args.ntau
    n = int(round(args.duration * args.ntau))
    if args.trajectory == "accel":
        traj = td.ramped_acceleration(args.a, args.ramp * tau, dt, n,
                                      mirrors=args.mirrors)
    elif args.trajectory == "sinusoid":
        traj = td.sinusoid(args.eps, args.omega / tau, args.ramp * tau, dt, n,
                           mirrors=args.mirrors)
    elif args.trajectory == "pulse":
        traj = td.smooth_pulse(args.eps, args.ramp * tau, dt, n,
                               mirrors=args.mirrors, start=tau)
    else:
        raise CavityError(f"unknown trajectory kind {args.trajectory!r}")
    if args.engine == "delay":
        rec = td.motional_force_perfect(traj, config)
    elif args.engine == "spectral":
        rec = td.motional_force_spectral(traj, config)
    elif args.engine == "single":
        rec = td.motional_force_single(traj, config)
    else:
        raise CavityError(f"unknown engine {args.engine!r}")
    rows = list(zip(rec.t.tolist(), rec.dF1.tolist(), rec.dF2.tolist(),
                    rec.dF_total.tolist()))
    _write_csv(args.out, ["t", "dF1", "dF2", "dF_total"], rows,
               fmt=args.format)
    if args.traj_out:
        _write_csv(args.traj_out, ["t", "dq1", "dq2"],
                   list(zip(traj.t.tolist(), traj.dq1.tolist(), traj.dq2.tolist())))
    for w in rec.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write_manifest(args.out, {
        "command": "simulate", "trajectory": args.trajectory,
        "engine": args.engine, "dt": dt, "samples": n,
        "warnings": rec.warnings,
    })
    return 0


def cmd_rigidbody(args):
    config = _config_from_args(args)
    if isinstance(config.mirror1, PerfectMirror):
        stat = casimir_energy_perfect(config.q, config.units)
    else:
        stat = casimir_force_partial(config)
    state = RigidBodyState(m1=args.mass, m2=args.mass,
                           q1=0.0, q2=config.q, E_f=stat.E_f, F=stat.F,
                           units=config.units)
    trace = simulate_accelerated_cavity(state, args.a, args.duration, args.dt)
    rows = list(zip(trace.t.tolist(), trace.q1.tolist(), trace.q2.tolist(),
                    trace.v.tolist(), trace.e1.tolist(), trace.e2.tolist(),
                    trace.E.tolist(), trace.P.tolist(), trace.Q.tolist(),
                    trace.residual.tolist()))
    _write_csv(args.out, ["t", "q1", "q2", "v", "e1", "e2", "E", "P", "Q",
                          "residual_c2P_minus_EQprime"], rows, fmt=args.format)
    c2 = config.units.c ** 2
    scale = max(np.max(np.abs(c2 * trace.P)), 1e-300)
    res = float(np.max(np.abs(trace.residual)) / scale)
    m_expected = args.mass * 2.0 + trace.delta_m
    checks = [
        Check("c2P_equals_EQprime", res, 0.0, 1e-9),
        Check("effective_mass", trace.effective_mass, m_expected, 1e-6),
    ]
    ok = emit_report(checks, sys.stderr if args.out is None else sys.stdout)
    _write_manifest(args.out, {
        "command": "rigidbody", "delta_m": trace.delta_m,
        "effective_mass": trace.effective_mass,
        "checks": [{"name": c.name, "gap": c.gap, "passed": c.passed} for c in checks],
    })
    return 0 if ok else 1


def cmd_verify(args):
    config = _config_from_args(args)
    units = config.units
    hbar, c = units.hbar, units.c
    checks = []
    perfect = isinstance(config.mirror1, PerfectMirror) and isinstance(config.mirror2, PerfectMirror)
    if perfect:
        co = coefficients_perfect(config)
        stat = casimir_energy_perfect(config.q, units)
        checks.append(Check("kappa11_closed_form", float(co.kappa[0, 0]),
                            -hbar * c * np.pi / (12.0 * config.q ** 3), 1e-12))
        checks.append(Check("mu_c2_eq_2U", co.mu_sum * c ** 2, 2.0 * stat.U, 1e-12))
        checks.append(Check("lambda_zero", float(np.max(np.abs(co.lam))), 0.0, 0.0))
    else:
        co = coefficients_partial(config, rel_tol=args.tol)
        stat = casimir_force_partial(config)
        # lambda = 0
        lam_scale = abs(float(co.kappa[0, 0])) * config.tau
        checks.append(Check("lambda_zero",
                            float(np.max(np.abs(co.lam))) / lam_scale, 0.0, 1e-8))
        # kappa = dF/dq
        dq = config.q * 1e-4
        fp = casimir_force_partial(config.with_q(config.q + dq)).F
        fm = casimir_force_partial(config.with_q(config.q - dq)).F
        checks.append(Check("kappa11_eq_dFdq", float(co.kappa[0, 0]),
                            (fp - fm) / (2.0 * dq), 1e-5))
        # mu_sum = -2Fq/c^2
        checks.append(Check("mu_sum_eq_minus_2Fq", co.mu_sum, stat.delta_m, 1e-6))
        # dual-route global mass correction
        mu_g, mu_f, gap = global_mass_correction(config, rel_tol=1.0)
        checks.append(Check("mu_dual_route", mu_g, mu_f, 1e-6))
        # kappa sum vanishes (translation invariance)
        checks.append(Check("kappa_sum_zero",
                            co.kappa_sum / abs(float(co.kappa[0, 0])), 0.0, 1e-10))
        # mirror physicality
        grid = np.linspace(1e-3, 60.0, 40001) * config.mirror1.omega_c
        rep = verify_physicality(config.mirror1, grid)
        checks.append(Check("mirror_kk_causality", rep.kk_residual, 0.0, 1e-3))
    ok = emit_report(checks)
    _write_manifest(args.out, {
        "command": "verify",
        "checks": [{"name": ch.name, "lhs": ch.lhs, "rhs": ch.rhs,
                    "gap": ch.gap, "passed": ch.passed} for ch in checks],
    })
    return 0 if ok else 1


def _add_common(p):
    p.add_argument("--q", type=float, default=1.0, help="mirror separation")
    p.add_argument("--mirror", default="perfect",
                   help="mirror spec: perfect | lorentzian:omega=<val> | file:<path>")
    p.add_argument("--mirror1", default=None, help="override mirror 1 spec")
    p.add_argument("--mirror2", default=None, help="override mirror 2 spec")
    p.add_argument("--units", choices=("natural", "si"), default="natural")
    p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance")
    p.add_argument("--out", default=None, help="output path (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--config", default=None,
                   help="flat key=value config file; flags override it")


def build_parser():
    parser = argparse.ArgumentParser(prog="cavity1d", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="quasistatic coefficient table")
    _add_common(p)
    p.add_argument("--sweep", default=None, help="param:min:max:steps[:log], param in {q, Omega}")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("force", help="Casimir force / statics table")
    _add_common(p)
    p.add_argument("--sweep", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_force)

    p = sub.add_parser("spectrum", help="susceptibility spectrum scan")
    _add_common(p)
    p.add_argument("--omega-tau-max", type=float, default=12.0)
    p.add_argument("--steps", type=int, default=500)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("simulate", help="time-domain motional force")
    _add_common(p)
    p.add_argument("--trajectory", choices=("accel", "sinusoid", "pulse"),
                   default="accel")
    p.add_argument("--engine", choices=("delay", "spectral", "single"),
                   default="delay")
    p.add_argument("--a", type=float, default=1e-9, help="acceleration amplitude")
    p.add_argument("--eps", type=float, default=1e-6, help="displacement amplitude")
    p.add_argument("--omega", type=float, default=0.1,
                   help="sinusoid frequency in units of 1/tau")
    p.add_argument("--ramp", type=float, default=48.0,
                   help="ramp / pulse length in units of tau")
    p.add_argument("--duration", type=float, default=192.0,
                   help="total duration in units of tau")
    p.add_argument("--ntau", type=int, default=32, help="samples per tau")
    p.add_argument("--mirrors", choices=("both", "1", "2"), default="both")
    p.add_argument("--traj-out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rigidbody", help="stressed rigid-body trace")
    _add_common(p)
    p.add_argument("--a", type=float, default=1e-6)
    p.add_argument("--duration", type=float, default=100.0)
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--mass", type=float, default=1.0, help="bare mass per mirror")
    p.set_defaults(func=cmd_rigidbody)

    p = sub.add_parser("verify", help="run identity-check suite")
    _add_common(p)
    p.add_argument("--suite", choices=("all",), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_config_file(parser, argv):
    # pre-scan for --config and fold its key=value pairs into the defaults
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    overrides = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CavityError(f"bad config line {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            for conv in (int, float):
                try:
                    val = conv(val)
                    break
                except ValueError:
                    continue
            overrides[key] = val
    known = {a.dest for a in parser._actions}
    for sp in parser._subparsers._group_actions[0].choices.values():
        known |= {a.dest for a in sp._actions}
    unknown = set(overrides) - known
    if unknown:
        raise PreconditionError(f"unknown config keys: {sorted(unknown)}")
    for sp in parser._subparsers._group_actions[0].choices.values():
        sp.set_defaults(**{k: v for k, v in overrides.items()
                           if k in {a.dest for a in sp._actions}})
    return argv


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CavityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
