"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on misuse
(bad arguments, bounds outside a documented cap, unwritable output).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import kappa as kappa_mod
from . import omega as omega_mod
from . import series as series_mod
from . import spectrum as spectrum_mod
from . import sums as sums_mod
from ._io import atomic_write, csv_text, json_text
from ._limits import ResourceLimitError

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

OMEGA_FE_TOL = 1e-10


class CheckFailed(Exception):
    pass


def _emit(args, text_lines: List[str], report: dict) -> None:
    if args.json:
        sys.stdout.write(json_text({"command": args.command, **report}))
    else:
        for line in text_lines:
            print(line)


def _write(args, header, rows, payload: dict) -> None:
    if not args.out:
        return
    if args.format == "json":
        atomic_write(args.out, json_text({"command": args.command, **payload}))
    else:
        atomic_write(args.out, csv_text(header, rows))


def _first_nonzero_msg(name: str, residual: series_mod.IntSeries) -> str:
    n = residual.first_nonzero()
    return f"{name} residual nonzero: coefficient of z^{n} is {residual[n]}"


# -- subcommands ----------------------------------------------------------------


def cmd_kappa(args) -> int:
    if args.growth is not None:
        rep = kappa_mod.growth_report(args.growth)
        rows = rep.to_rows()
        header = ("m", "argmax", "max", "ratio", "exhaustive")
        _write(args, header, rows, {"records": [dict(zip(header, map(str, r))) for r in rows]})
        bad = [r for r in rep.records if r.exhaustive and r.argmax != (1 << r.m) - 1]
        last = rep.records[-1]
        _emit(
            args,
            [f"m={r.m} argmax={r.argmax} max={r.max_value} ratio={r.ratio:.12f}" for r in rep.records]
            + [f"limit (2+sqrt2)/4 = {kappa_mod.LIMSUP_K2:.12f}"],
            {
                "k": 2,
                "records": [dict(zip(header, map(str, r))) for r in rows],
                "repunit_maximiser": not bad,
                "final_ratio": last.ratio,
            },
        )
        if bad:
            print(f"maximiser is not the repunit at m={bad[0].m}: {bad[0].argmax}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        return EXIT_OK
    if args.range is not None:
        table = kappa_mod.kappa_range(args.k, args.range).tolist()
        _write(args, ("n", "kappa"), list(enumerate(table)), {"k": args.k, "values": [str(v) for v in table]})
        _emit(args, [" ".join(map(str, table[:64])) + (" ..." if len(table) > 64 else "")], {"k": args.k, "N": args.range, "values": [str(v) for v in table[:64]]})
        return EXIT_OK
    n = args.n if args.n is not None else 0
    value = kappa_mod.kappa(n, args.k)
    _emit(args, [str(value)], {"k": args.k, "n": n, "kappa": str(value)})
    return EXIT_OK


def cmd_series_check(args) -> int:
    mfe = series_mod.check_mfe(args.k, args.order)
    hom_order = args.homogeneous_order or min(args.order, max(1000, args.k**3))
    hom = series_mod.check_homogeneous(args.k, hom_order)
    ok = mfe.is_zero() and hom.is_zero()
    mfe_nz = len(mfe.support())
    hom_nz = len(hom.support())
    _emit(
        args,
        [f"MFE residual: {mfe_nz}", f"homogeneous residual: {hom_nz}"],
        {"k": args.k, "order": args.order, "homogeneous_order": hom_order, "mfe_nonzero": mfe_nz, "homogeneous_nonzero": hom_nz, "ok": ok},
    )
    _write(args, ("n", "mfe_residual"), list(enumerate(mfe.coeffs)), {"mfe_residual": [str(c) for c in mfe.coeffs]})
    if not mfe.is_zero():
        print(_first_nonzero_msg("MFE", mfe), file=sys.stderr)
    if not hom.is_zero():
        print(_first_nonzero_msg("homogeneous", hom), file=sys.stderr)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_spectrum(args) -> int:
    rep = spectrum_mod.char_poly(args.k)
    prof = spectrum_mod.radial_profile(args.k, args.j_max)
    roots = [str(r) for r in rep.roots]
    lines = [
        f"chi coefficients: {list(rep.expanded)}",
        f"factored form matches: {rep.identity_holds}",
        f"roots: {', '.join(roots)}",
        f"alpha: {rep.alpha!r}",
        f"gamma: {rep.gamma!r}",
    ] + [f"j={p.j} order={p.order} K={p.K:.17g} C_est={p.C_est:.17g}" for p in prof.points]
    header = ("j", "z", "order", "K", "C_est")
    rows = prof.csv_rows()
    _emit(
        args,
        lines,
        {
            "k": args.k,
            "chi": list(rep.expanded),
            "identity_holds": rep.identity_holds,
            "roots": roots,
            "alpha": rep.alpha,
            "gamma": rep.gamma,
            "radial": [dict(zip(header, r)) for r in rows],
        },
    )
    _write(args, header, rows, {"radial": [dict(zip(header, r)) for r in rows]})
    if not rep.identity_holds:
        print(f"characteristic polynomial forms disagree: {rep.expanded} vs {rep.factored}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_omega(args) -> int:
    table = omega_mod.build_omega(args.k, args.depth)
    residuals = omega_mod.fe_residuals(table)
    worst_root = max(residuals, key=residuals.get)
    worst = residuals[worst_root]
    weight_ok = omega_mod.check_weight_identity(args.k)
    rows = omega_mod.table_rows(table)
    header = ("m", "j", "re", "im", "fe_residual")
    _emit(
        args,
        [f"roots: {len(rows)}", f"max functional-equation residual: {worst:.3e}", f"weight identity: {weight_ok}"],
        {"k": args.k, "depth": args.depth, "roots": len(rows), "max_residual": worst, "weight_identity": weight_ok},
    )
    _write(args, header, rows, {"omega": [dict(zip(header, r)) for r in rows]})
    if worst > OMEGA_FE_TOL or not weight_ok:
        print(f"functional equation fails at root (m={worst_root.m}, j={worst_root.j}): residual {worst:.3e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_sums(args) -> int:
    prof = sums_mod.partial_sums(args.k, args.n_max)
    lo = min(args.n_max, 1 << 10)
    norm = prof.normalized(lo)
    lines = [f"S({args.n_max}) = {prof[args.n_max]}", f"normalized over [{lo}, {args.n_max}]: min {norm.min():.17g} max {norm.max():.17g}"]
    report = {"k": args.k, "N_max": args.n_max, "S": str(prof[args.n_max]), "normalized_min": float(norm.min()), "normalized_max": float(norm.max())}
    if args.profile is not None:
        x, g = sums_mod.oscillation_profile(args.k, args.profile, args.samples)
        if args.profile_out:
            atomic_write(args.profile_out, csv_text(("x", "g_m"), zip(x.tolist(), g.tolist())))
        report["profile_level"] = args.profile
    _emit(args, lines, report)
    header = ("N", "S", "normalized")
    rows = prof.csv_rows()
    _write(args, header, rows, {"rows": [dict(zip(header, r)) for r in rows]})
    return EXIT_OK


def cmd_takagi(args) -> int:
    if args.x is not None:
        s = sums_mod.takagi(args.x, args.tol)
        _emit(args, [f"{s.tau:.17g}"], {"x": s.x, "tau": s.tau, "terms": s.terms})
        return EXIT_OK
    xs = np.linspace(0.0, 1.0, args.samples)
    tau = sums_mod.takagi_grid(xs, args.tol)
    rows = list(zip(xs.tolist(), tau.tolist()))
    _emit(args, [f"samples: {args.samples}", f"max tau: {tau.max():.17g}"], {"samples": args.samples, "max_tau": float(tau.max())})
    _write(args, ("x", "tau"), rows, {"rows": [{"x": x, "tau": t} for x, t in rows]})
    return EXIT_OK


def cmd_probe(args) -> int:
    if args.control:
        basis = series_mod.mfe_control(args.k, args.poly_deg, args.order)
        found = len(basis)
        expected = args.poly_deg - (args.k * args.k - 1) + 1
        ok = found == max(expected, 0)
    else:
        basis = series_mod.relation_probe(args.k, args.deg, args.poly_deg, args.order)
        found = len(basis)
        ok = found == 0
    _emit(args, [f"relations found: {found}"], {"k": args.k, "relations_found": found, "basis": [[str(c) for c in v] for v in basis.basis]})
    if args.out:
        atomic_write(args.out, basis.to_json() + "\n")
    if not ok:
        print(f"unexpected kernel dimension {found}; first relation: {list(basis.basis[0]) if basis.basis else []}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_compare(args) -> int:
    path = sums_mod.export_comparison(args.out or "comparison.csv", m=args.m, samples=args.samples, tol=args.tol)
    _emit(args, [f"wrote {path}"], {"path": str(path), "m": args.m, "samples": args.samples})
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zaremba", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--k", type=int, default=2, help="base (default 2)")
        sp.add_argument("--json", action="store_true", help="print a machine-readable report")
        sp.add_argument("--out", help="write data to this path")
        sp.add_argument("--format", choices=("csv", "json"), default="csv", help="format of --out")
        return sp

    sp = add("kappa", cmd_kappa, "values of kappa")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="single index")
    g.add_argument("--range", type=int, metavar="N", help="table of kappa(0..N-1)")
    g.add_argument("--growth", type=int, metavar="M_MAX", help="k=2 block maxima for m <= M_MAX")

    sp = add("series-check", cmd_series_check, "exact functional-equation residuals")
    sp.add_argument("--order", type=int, default=10_000)
    sp.add_argument("--homogeneous-order", type=int)

    sp = add("spectrum", cmd_spectrum, "characteristic polynomial and radial profile")
    sp.add_argument("--j-max", type=int, default=12)

    sp = add("omega", cmd_omega, "Omega on roots of unity")
    sp.add_argument("--depth", type=int, default=5)

    sp = add("sums", cmd_sums, "partial sums and normalised profile")
    sp.add_argument("--n-max", type=int, default=1 << 16)
    sp.add_argument("--profile", type=int, metavar="M", help="also sample g_M on [1, k]")
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--profile-out")

    sp = add("takagi", cmd_takagi, "Takagi function")
    sp.add_argument("--x", type=float)
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--tol", type=float, default=sums_mod.TAKAGI_TOL)

    sp = add("probe", cmd_probe, "search for polynomial relations between K(z) and K(z^k)")
    sp.add_argument("--deg", type=int, default=2, help="total degree bound D")
    sp.add_argument("--poly-deg", type=int, default=8, help="coefficient degree bound d")
    sp.add_argument("--order", type=int, default=200)
    sp.add_argument("--control", action="store_true", help="positive control: recover the functional equation")

    sp = add("compare", cmd_compare, "normalised sums next to the Takagi function")
    sp.add_argument("--m", type=int, default=15)
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--tol", type=float, default=sums_mod.TAKAGI_TOL)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.k < 2:
        parser.print_usage(sys.stderr)
        print(f"zaremba: error: --k must be >= 2, got {args.k}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, ResourceLimitError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"zaremba {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
