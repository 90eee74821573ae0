"""Command-line front end.

Subcommands: eqm, rec, rh, fit, verify, jacobi-check.  Data goes to
stdout (JSON or CSV, deterministic formatting); diagnostics and the
human-readable verify table go to stderr.  Exit codes: 0 pass,
1 verification failure, 2 configuration / convergence errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from mpmath import mp

from . import __version__
from .asymptotics import (
    default_window,
    fit_inverse_powers,
    richardson_limit,
    verify_theorem,
)
from .equilibrium import lagrange_constant, solve_equilibrium
from .errors import OneCutError
from .potential import parse_potential
from .precision import PrecisionConfig, default_precision_bits
from .recurrence import RecurrenceTable, compute_recurrence, jacobi_recurrence_closed
from .rh_expansion import beta1_closed, beta1_via_R, endpoint_laurent, r1_moments


def _num(x, digits):
    return mp.nstr(x, digits, strip_zeros=False)


def _meta(args, node_count=0):
    return {
        "potential": getattr(args, "potential", None),
        "precision_bits": args.precision_bits,
        "node_count": node_count,
        "tool_version": __version__,
    }


def _pauli_json(pc, digits):
    return {
        "I": _num(pc.cI, digits),
        "sigma1": _num(pc.c1, digits),
        "sigma2": _num(pc.c2, digits),
        "sigma3": _num(pc.c3, digits),
    }


def _load_config(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _apply_config(args, argv):
    """Fill argparse values from a flat config file; explicit flags win."""
    if not getattr(args, "config", None):
        return args
    explicit = {
        arg.lstrip("-").partition("=")[0].replace("-", "_")
        for arg in argv
        if arg.startswith("--")
    }
    values = _load_config(args.config)
    for key, raw in values.items():
        if not hasattr(args, key) or key in ("config", "command", "func"):
            raise ValueError(f"unknown config key {key!r}")
        if key in explicit:
            continue
        try:
            setattr(args, key, int(raw))
        except ValueError:
            setattr(args, key, raw)
    return args


def _parse_window(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError("window must look like LO:HI")
    return int(lo), int(hi)


def _cfg(args):
    return PrecisionConfig(
        precision_bits=args.precision_bits,
        digits_target=args.digits,
    )


def _validate(args, checks):
    problems = [msg for ok, msg in checks if not ok]
    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_eqm(args):
    digits = args.digits
    pot = parse_potential(args.potential, prec=args.precision_bits)
    m = solve_equilibrium(pot, prec=args.precision_bits, with_lagrange=False)
    lag = lagrange_constant(m, pot, prec=args.precision_bits) if m.regular else None
    rep = m.report
    out = {
        "a": _num(m.a, digits),
        "b": _num(m.b, digits),
        "h_kind": m.h.kind,
        "h_coeffs": [_num(c, digits) for c in getattr(m.h, "coeffs", ())],
        "lagrange": _num(lag, digits) if lag is not None else None,
        "regular": m.regular,
        "diagnostics": {
            "h_min": _num(rep.h_min, digits),
            "phi_min": _num(rep.phi_min, digits),
            "tilde_phi_min": _num(rep.tilde_phi_min, digits),
            "normalization_residual": _num(rep.normalization_residual, digits),
        },
        "meta": _meta(args),
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_rec(args):
    _validate(
        args,
        [
            (args.n_max is not None, "n-max is required (flag or config file)"),
            (args.n_max is None or args.n_max >= 1, "n-max must be >= 1"),
        ],
    )
    pot = parse_potential(args.potential, prec=args.precision_bits)
    table = compute_recurrence(pot, args.n_max, _cfg(args))
    _print_table_csv(table, args.digits, args)
    return 0


def _print_table_csv(table, digits, args):
    print(f"# potential: {table.potential_spec}")
    print(f"# precision_bits: {table.precision_bits}")
    print(f"# node_count: {table.node_count}")
    print(f"# tool_version: {__version__}")
    print("n,a_nn,b_nn")
    for n, a_nn, b_nn in table.entries:
        print(f"{n},{_num(a_nn, digits)},{_num(b_nn, digits)}")


def cmd_rh(args):
    digits = args.digits
    pot = parse_potential(args.potential, prec=args.precision_bits)
    m = solve_equilibrium(pot, prec=args.precision_bits)
    if not m.regular:
        print("field failed the one-cut regularity checks", file=sys.stderr)
        return 1
    data = endpoint_laurent(m, pot, prec=args.precision_bits)
    mom = r1_moments(m, pot, data=data, prec=args.precision_bits)
    out = {
        "beta1_closed": _num(beta1_closed(m, prec=args.precision_bits), digits),
        "beta1_via_R": _num(beta1_via_R(m, pot, data=data, prec=args.precision_bits), digits),
        "A0": _num(data.A0, digits),
        "A1": _num(data.A1, digits),
        "B0": _num(data.B0, digits),
        "B1": _num(data.B1, digits),
        "R11": _pauli_json(mom.R11, digits),
        "R12": _pauli_json(mom.R12, digits),
        "meta": _meta(args),
    }
    print(json.dumps(out, indent=2))
    return 0


def _read_rec_csv(stream):
    entries = []
    meta = {}
    header_seen = False
    for line in stream:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
            continue
        if not header_seen:
            if line != "n,a_nn,b_nn":
                raise ValueError(f"unexpected CSV header {line!r}")
            header_seen = True
            continue
        n_s, a_s, b_s = line.split(",")
        entries.append((int(n_s), mp.mpf(a_s), mp.mpf(b_s)))
    table = RecurrenceTable(
        entries=entries,
        precision_bits=int(meta.get("precision_bits", default_precision_bits())),
        node_count=int(meta.get("node_count", 0)),
        potential_spec=meta.get("potential", ""),
    )
    return table


def cmd_fit(args):
    digits = args.digits
    powers = [int(x) for x in args.powers.split(",")]
    window = _parse_window(args.window)
    if args.input == "-":
        table = _read_rec_csv(sys.stdin)
    else:
        with open(args.input) as fh:
            table = _read_rec_csv(fh)
    which = table.b_sequence() if args.column == "b" else table.a_sequence()
    fit = fit_inverse_powers(which, powers, window, prec=args.precision_bits)
    out = {
        "column": args.column,
        "powers": fit.powers,
        "coefficients": [_num(c, digits) for c in fit.coefficients],
        "residual_max": _num(fit.residual_max, digits),
        "condition": _num(fit.condition, 8),
        "window": list(fit.window),
        "meta": _meta(args, node_count=table.node_count),
    }
    if args.richardson:
        out["richardson_limit"] = _num(
            richardson_limit(which, min(6, len(which) - 1), prec=args.precision_bits),
            digits,
        )
    print(json.dumps(out, indent=2))
    return 0


def _report_json(report, digits):
    return {
        "a_limit_expected": _num(report.a_limit_expected, digits),
        "a_limit_fitted": _num(report.a_limit_fitted, digits),
        "b_limit_expected": _num(report.b_limit_expected, digits),
        "b_limit_fitted": _num(report.b_limit_fitted, digits),
        "beta1_expected": _num(report.beta1_expected, digits),
        "beta1_fitted": _num(report.beta1_fitted, digits),
        "odd_alpha_max": _num(report.odd_alpha_max, digits),
        "pass": {
            "a_limit": report.a_limit_pass,
            "b_limit": report.b_limit_pass,
            "beta1": report.beta1_pass,
            "odd_alpha": report.odd_alpha_pass,
            "overall": report.overall_pass,
        },
    }


def _report_table(report):
    rows = [
        ("a limit", report.a_limit_expected, report.a_limit_fitted, report.a_limit_pass),
        ("b limit", report.b_limit_expected, report.b_limit_fitted, report.b_limit_pass),
        ("beta1", report.beta1_expected, report.beta1_fitted, report.beta1_pass),
    ]
    lines = [f"{'check':<10}{'expected':>25}{'fitted':>25}  verdict"]
    for name, exp, fit, ok in rows:
        lines.append(
            f"{name:<10}{mp.nstr(exp, 15):>25}{mp.nstr(fit, 15):>25}  "
            + ("pass" if ok else "FAIL")
        )
    lines.append(
        f"{'odd alpha':<10}{'<= tol':>25}{mp.nstr(report.odd_alpha_max, 6):>25}  "
        + ("pass" if report.odd_alpha_pass else "FAIL")
    )
    return "\n".join(lines)


def cmd_verify(args):
    digits = args.digits
    _validate(args, [(args.n_max >= 8, "n-max must be >= 8 for a meaningful fit")])
    pot = parse_potential(args.potential, prec=args.precision_bits)
    m = solve_equilibrium(pot, prec=args.precision_bits)
    if not m.regular:
        print("field failed the one-cut regularity checks", file=sys.stderr)
        return 1
    table = compute_recurrence(pot, args.n_max, _cfg(args))
    window = _parse_window(args.window) if args.window else default_window(args.n_max)
    report = verify_theorem(pot, m, table, window=window, prec=args.precision_bits)
    out = _report_json(report, digits)
    out["meta"] = _meta(args, node_count=table.node_count)
    if args.plot:
        from .plots import render_verify_figures, write_fit_datafile

        write_fit_datafile(f"{args.plot}.dat", table, report.b_fit)
        figures = render_verify_figures(args.plot, table, report)
        out["plot_files"] = [f"{args.plot}.dat"] + figures
    print(json.dumps(out, indent=2))
    print(_report_table(report), file=sys.stderr)
    return 0 if report.overall_pass else 1


def cmd_jacobi_check(args):
    digits = args.digits
    _validate(
        args,
        [
            (args.A > 0, "A must be > 0"),
            (args.B > 0, "B must be > 0"),
            (args.n_max >= 8, "n-max must be >= 8"),
        ],
    )
    args.potential = f"jacobi:{args.A},{args.B}"
    pot = parse_potential(args.potential, prec=args.precision_bits)
    m = solve_equilibrium(pot, prec=args.precision_bits)
    table = compute_recurrence(pot, args.n_max, _cfg(args))
    worst_rel = mp.mpf(0)
    for n, a_nn, b_nn in table.entries:
        a_ref, b_ref = jacobi_recurrence_closed(
            pot.jacobi_A, pot.jacobi_B, n, prec=args.precision_bits
        )
        worst_rel = max(worst_rel, abs(a_nn - a_ref) / abs(a_ref))
        if b_ref != 0:
            worst_rel = max(worst_rel, abs(b_nn - b_ref) / abs(b_ref))
    window = default_window(args.n_max)
    b_fit = fit_inverse_powers(table.b_sequence(), [0, 1, 2, 3], window, prec=args.precision_bits)
    b1_closed = beta1_closed(m, prec=args.precision_bits)
    b1_fitted = b_fit.coefficient(1)
    closed_ok = worst_rel <= mp.mpf("1e-12")
    beta1_ok = abs(b1_fitted - b1_closed) <= mp.mpf("1e-3")
    out = {
        "closed_form_max_rel_error": _num(worst_rel, 8),
        "beta1_closed": _num(b1_closed, digits),
        "beta1_fitted": _num(b1_fitted, digits),
        "pass": {"closed_form": closed_ok, "beta1": beta1_ok, "overall": closed_ok and beta1_ok},
        "meta": _meta(args, node_count=table.node_count),
    }
    print(json.dumps(out, indent=2))
    return 0 if closed_ok and beta1_ok else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="onecut",
        description="equilibrium measures and recurrence-coefficient asymptotics "
        "for one-cut regular external fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, potential=True):
        if potential:
            sp.add_argument(
                "--potential",
                required=True,
                help="poly:c0,c1,...,cd (ascending) or jacobi:A,B",
            )
        sp.add_argument(
            "--precision-bits",
            type=int,
            default=default_precision_bits(),
            help="binary working precision (env ONECUT_PRECISION_BITS overrides the default)",
        )
        sp.add_argument("--digits", type=int, default=30, help="output significant digits")
        sp.add_argument("--config", default=None, help="flat key = value config file")

    sp = sub.add_parser("eqm", help="equilibrium measure data as JSON")
    common(sp)
    sp.set_defaults(func=cmd_eqm)

    sp = sub.add_parser("rec", help="diagonal recurrence table as CSV")
    common(sp)
    sp.add_argument("--n-max", type=int, default=None, help="required (flag or config file)")
    sp.set_defaults(func=cmd_rec)

    sp = sub.add_parser("rh", help="expansion objects and both beta1 routes as JSON")
    common(sp)
    sp.add_argument("--report", choices=["beta1"], default="beta1")
    sp.set_defaults(func=cmd_rh)

    sp = sub.add_parser("fit", help="inverse-power fit of a rec CSV")
    common(sp, potential=False)
    sp.add_argument("--input", default="-", help="rec CSV path, or - for stdin")
    sp.add_argument("--column", choices=["a", "b"], default="b")
    sp.add_argument("--powers", default="0,1,2,3")
    sp.add_argument("--window", required=True, help="LO:HI inclusive")
    sp.add_argument("--richardson", action="store_true", help="add a Neville cross-check")
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("verify", help="full pipeline: eqm -> rec -> fit -> report")
    common(sp)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--window", default=None, help="LO:HI (default n_max/2 : n_max)")
    sp.add_argument(
        "--plot",
        default=None,
        metavar="PREFIX",
        help="write PREFIX.dat (gnuplot columns) and PREFIX_{a,b}.png figures",
    )
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("jacobi-check", help="closed-form cross-validation for jacobi fields")
    common(sp, potential=False)
    sp.add_argument("--A", type=float, required=True)
    sp.add_argument("--B", type=float, required=True)
    sp.add_argument("--n-max", type=int, default=64)
    sp.set_defaults(func=cmd_jacobi_check)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        args = _apply_config(args, argv)
        return args.func(args)
    except (OneCutError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
