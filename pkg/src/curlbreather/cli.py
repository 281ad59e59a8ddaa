"""Command-line reports: period tables, constructions, portraits, fits.

Every subcommand writes delimited data (CSV with 17 significant digits,
JSON with stable key order) plus rendered figures into --out.  Exit codes:
0 success, 1 usage/config error, 2 hypothesis failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import expansions, oscillator, phase_plane, verifier
from .breather import build_breather, decay_rate
from .coefficients import builtin_profile, check_hypotheses, default_radius_grid, load_profile
from .common import TWO_PI, Sign
from .errors import FitError, HypothesisViolation, ProfileConfigError
from . import figures

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value) -> str:
    return f"{float(value):.17g}"


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else _fmt(cell) for cell in row])
    return path


def write_json(path: Path, obj) -> Path:
    path.write_text(json.dumps(obj, indent=2) + "\n")
    return path


def _rule(title: str) -> None:
    print("=" * 64)
    print(title)
    print("=" * 64)


def _status(label: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _resolve_profile(args):
    if args.profile not in (None, "builtin"):
        return load_profile(args.profile)
    return builtin_profile(
        args.p,
        Sign.from_str(args.sign),
        a=args.a,
        m=args.m,
        beta=args.beta,
        delta=args.delta,
    )


def cmd_period_table(args) -> int:
    out = _out_dir(args)
    sign = Sign.from_str(args.sign)
    p = args.p
    if sign is Sign.PLUS:
        e_max = args.e_max if args.e_max is not None else 10.0
        energies = np.concatenate([[0.0], np.geomspace(1e-3, e_max, args.n - 1)])
    else:
        cap = phase_plane.separatrix_energy(p)
        e_max = args.e_max if args.e_max is not None else 0.98 * cap
        if e_max >= cap:
            raise _UsageError(f"--e-max must lie below the separatrix energy {cap:.6g}")
        energies = np.concatenate([[0.0], np.geomspace(1e-3 * cap, e_max, args.n - 1)])

    rows = []
    l_quads, l_rets = [], []
    for e in energies:
        n_amp = phase_plane.amplitude(sign, p, e)
        lq = phase_plane.period(sign, p, e)
        lr = oscillator.return_map_period(sign, p, e)
        rows.append((e, n_amp, lq, lr, abs(lq - lr)))
        l_quads.append(lq)
        l_rets.append(lr)
    csv_path = write_csv(
        out / "period_table.csv",
        ("e", "amplitude", "L_quadrature", "L_return_map", "abs_diff"),
        rows,
    )
    fig_path = figures.save_period_curve(
        out / "period_curve.png", energies, l_quads, l_rets, sign.value
    )
    max_diff = max(row[4] for row in rows)
    _rule(f"period table: sign={sign.value} p={p} ({len(rows)} energies)")
    print(f"wrote {csv_path}")
    print(f"wrote {fig_path}")
    _status("quadrature vs return-map agreement", max_diff <= args.tol,
            f"max |diff| = {max_diff:.3e} (tol {args.tol:.1e})")
    return EXIT_OK if max_diff <= args.tol else EXIT_NUMERICAL


def cmd_phase_portrait(args) -> int:
    out = _out_dir(args)
    sign = Sign.from_str(args.sign)
    p = args.p
    if args.energies:
        energies = [float(tok) for tok in args.energies.split(",")]
    elif sign is Sign.PLUS:
        energies = [0.5, 1.5, 3.0]
    else:
        cap = phase_plane.separatrix_energy(p)
        energies = [0.3 * cap, 0.6 * cap, 0.9 * cap]

    rows = []
    orbit_data = []
    for e in energies:
        pts = oscillator.orbit_samples(sign, p, e, n=args.n)
        orbit_data.append((e, pts))
        for y, v in pts:
            rows.append((f"orbit-{e:.6g}", e, y, v))

    separatrix = None
    if sign is Sign.MINUS:
        # The separatrix is traced as the level set of the first integral at
        # the separatrix energy, never by time integration: it contains the
        # equilibria (+/-1, 0), where the flow is stationary.
        e_star = phase_plane.separatrix_energy(p)
        ys = np.linspace(-1.0, 1.0, args.n)
        vs = np.sqrt(np.maximum(
            0.0, e_star - ys**2 + 2.0 / (p + 1.0) * np.abs(ys) ** (p + 1.0)
        ))
        upper = np.column_stack([ys, vs])
        lower = np.column_stack([ys[::-1], -vs[::-1]])
        separatrix = np.vstack([upper, lower])
        for y, v in separatrix:
            rows.append(("separatrix", e_star, y, v))

    csv_path = write_csv(out / "phase_portrait.csv", ("curve", "e", "y", "ydot"), rows)
    fig_path = figures.save_phase_portrait(
        out / "phase_portrait.png", orbit_data, separatrix, sign.value
    )
    _rule(f"phase portrait: sign={sign.value} p={p}")
    print(f"wrote {csv_path}")
    print(f"wrote {fig_path}")
    return EXIT_OK


def cmd_expansion_check(args) -> int:
    out = _out_dir(args)
    sign = Sign.from_str(args.sign)
    lo, hi = (float(tok) for tok in args.window.split(","))
    grid = expansions.default_s_grid(sign, n=args.n, lo=lo, hi=hi)
    report = expansions.validate_expansion(sign, args.p, grid)
    m_vals = [phase_plane.invert_period(sign, args.p, s) for s in grid]
    lead = [expansions.leading_order(sign, args.p, s).m for s in grid]
    offsets = [abs(s - TWO_PI) for s in grid]
    csv_path = write_csv(
        out / "expansion_data.csv",
        ("s", "offset", "M", "M_leading"),
        list(zip(grid, offsets, m_vals, lead)),
    )
    json_path = write_json(out / "expansion_check.json", report.to_dict())
    fig_path = figures.save_expansion_fit(
        out / "expansion_fit.png",
        offsets,
        m_vals,
        f"fit {report.fitted_exponent:.4f} vs 2/(p-1) = {report.expected_exponent:.4f}",
    )
    _rule(f"expansion check: sign={sign.value} p={args.p}")
    for path in (csv_path, json_path, fig_path):
        print(f"wrote {path}")
    _status("exponent", report.exponent_ok,
            f"fitted {report.fitted_exponent:.6f}, expected {report.expected_exponent:.6f}")
    _status("prefactor", report.prefactor_ok,
            f"fitted {report.fitted_prefactor:.8f}, alpha = {report.alpha:.8f}")
    return EXIT_OK if (report.exponent_ok and report.prefactor_ok) else EXIT_NUMERICAL


def cmd_construct(args) -> int:
    out = _out_dir(args)
    profile = _resolve_profile(args)
    rng = np.random.default_rng(args.seed)

    write_json(out / "profile.json", profile.to_dict())
    report = check_hypotheses(profile, default_radius_grid(profile))
    write_json(out / "hypothesis_report.json", report.to_dict())
    _rule(f"construct: sign={profile.sign.value} p={profile.p} family={profile.family}")
    for check in report.checks:
        _status(check.name, check.passed, check.detail)
    if not report.all_passed:
        names = ", ".join(c.name for c in report.failed())
        print(f"hypothesis failure: {names}", file=sys.stderr)
        return EXIT_HYPOTHESIS

    spec = build_breather(profile)
    T = spec.T

    r_max = args.r_max
    rs = np.linspace(0.0, r_max, 41)
    ts = np.linspace(0.0, T, 33)
    psi = spec.psi_grid(rs, ts)
    write_csv(
        out / "radial_slice.csv",
        ("r", "t", "psi"),
        [(r, t, psi[i, j]) for i, r in enumerate(rs) for j, t in enumerate(ts)],
    )

    pts = verifier.random_spacetime_points(rng, args.points, T)
    write_csv(
        out / "field_samples.csv",
        ("x1", "x2", "x3", "t", "U1", "U2", "U3"),
        [(x[0], x[1], x[2], t, *spec.field(x, t)) for x, t in pts],
    )

    fit = decay_rate(spec, np.linspace(2.0, 6.0, 25))
    write_json(out / "decay_fit.json", {**fit.to_dict(), "required_delta": profile.delta})

    hs = (0.04, 0.02, 0.01)
    reduced_pts = [(float(np.linalg.norm(x)), t) for x, t in pts]
    reports = [
        verifier.reduced_residual_sweep(spec, reduced_pts, hs),
        verifier.full_residual_sweep(spec, pts, hs),
        verifier.curl_curl_sweep(spec, pts, hs),
        verifier.monochromatic_sweep(profile, pts, hs),
    ]
    alg_max = max(verifier.algebraic_residual(profile, r) for r in np.linspace(0.1, r_max, 40))
    write_json(
        out / "residual_report.json",
        {
            "sweeps": [rep.to_dict() for rep in reports],
            "algebraic_max_rel": alg_max,
        },
    )

    if not args.no_figures:
        figures.save_breather_slice(out / "breather_slice.png", rs, ts, psi)
        env = [spec.envelope(float(r)) for r in np.linspace(0.5, 8.0, 40)]
        figures.save_decay_fit(
            out / "decay_fit.png", np.linspace(0.5, 8.0, 40), env, fit.slope, fit.intercept
        )
        figures.save_residual_convergence(out / "residual_convergence.png", reports)

    ok = True
    _status("decay rate", fit.rate >= profile.delta,
            f"fitted {fit.rate:.4g}, required {profile.delta:.4g}")
    ok &= fit.rate >= profile.delta
    for rep in reports:
        _status(f"{rep.kind} order", rep.passed,
                f"{rep.order:.3f} in [{rep.window[0]}, {rep.window[1]}]")
        ok &= rep.passed
    _status("monochromatic algebraic residual", alg_max <= 1e-13, f"max rel {alg_max:.3e}")
    ok &= alg_max <= 1e-13
    print(f"outputs in {out}")
    return EXIT_OK if ok else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curlbreather", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=float, default=3.0, help="nonlinearity exponent p > 1")
        sp.add_argument("--sign", choices=("plus", "minus"), default="plus")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-6)

    sp = sub.add_parser("period-table", help="tabulate L(e) by quadrature and return map")
    common(sp)
    sp.add_argument("--n", type=int, default=21)
    sp.add_argument("--e-max", type=float, default=None)
    sp.set_defaults(func=cmd_period_table)

    sp = sub.add_parser("phase-portrait", help="sample orbits (and the minus separatrix)")
    common(sp)
    sp.add_argument("--energies", default=None, help="comma-separated orbit energies")
    sp.add_argument("--n", type=int, default=400)
    sp.set_defaults(func=cmd_phase_portrait)

    sp = sub.add_parser("expansion-check", help="fit M(s) against its leading-order law")
    common(sp)
    sp.add_argument("--n", type=int, default=30)
    sp.add_argument("--window", default="1e-6,1e-2", help="offset window lo,hi")
    sp.set_defaults(func=cmd_expansion_check)

    sp = sub.add_parser("construct", help="build a breather and verify it")
    common(sp)
    sp.add_argument("--profile", default=None, help="profile JSON path, or 'builtin'")
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--delta", type=float, default=1.0)
    sp.add_argument("--points", type=int, default=6, help="random verification points")
    sp.add_argument("--r-max", type=float, default=5.0)
    sp.add_argument("--no-figures", action="store_true")
    sp.set_defaults(func=cmd_construct)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ProfileConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolation as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (FitError, ValueError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
