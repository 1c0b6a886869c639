"""Command-line front end.

Subcommands: ``verify`` runs identity checks and streams one JSON report per
line; ``scatter`` computes cross sections (JSON) and differential sweeps
(CSV, optionally with a rendered figure); ``expand`` runs the exact
cancellation check. Data goes to stdout, diagnostics to stderr. Exit codes:
0 all checks pass, 1 a check failed or did not converge, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from fractions import Fraction

import json

from mpmath import mp, mpf, workprec

from .exactmath import double_factorial
from .expansion import a5_sides, a6_sides, id2_cancellation
from .reports import VerificationReport, build_report, decimal_str
from .scattering import (
    FORWARD_EXCLUSION,
    ScatteringParams,
    amplitude_with_bound,
    sigma_closed,
    sigma_partial_waves,
    sigma_quadrature,
)
from .specfun import to_mpf
from .sums import (
    ConvergenceError,
    SumConfig,
    bessel_alt_sum,
    cos_mean_sum,
    id1_rhs,
    id2_rhs,
    sinc_mean_sum,
)

__all__ = ["main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_ID_XS = "0.1,0.5,1,2.5,10"
_B_XS = "0.25,1,3"
_FD_XS = "0.5,1.5"

_VERIFY_TARGETS = ("id1", "id2", "b3", "b4", "b5", "a4", "a5", "a6", "cancellation", "all")


def _budget_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("evaluation budget")
    g.add_argument("--precision-bits", type=int, default=256, metavar="BITS")
    g.add_argument("--tol", type=float, default=1e-12, metavar="ABS")
    g.add_argument("--max-terms", type=int, default=10**7, metavar="N")
    g.add_argument("--tail-order", type=int, default=6, metavar="M")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meansinc",
        description="Verify mean-argument sinc-sum identities and compute the "
        "scattering observables they control.",
    )
    budget = _budget_parent()
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[budget], help="run identity checks")
    verify.add_argument("target", choices=_VERIFY_TARGETS)
    verify.add_argument("--x", default=None, help="comma-separated x values")
    verify.add_argument("--n-max", type=int, default=None, metavar="N")
    verify.add_argument("--order", type=int, default=50, metavar="N")
    verify.add_argument("--h", type=float, default=1e-3, metavar="H")

    scatter = sub.add_parser("scatter", parents=[budget], help="scattering observables")
    smode = scatter.add_subparsers(dest="mode", required=True)
    sigma = smode.add_parser("sigma", parents=[budget], help="three-route total cross section")
    sigma.add_argument("--x", type=float, required=True)
    sigma.add_argument("--k", type=float, required=True)
    sigma.add_argument("--rel-tol", type=float, default=1e-6, metavar="REL")
    dcs = smode.add_parser("dcs", parents=[budget], help="differential cross-section sweep (CSV)")
    dcs.add_argument("--x", type=float, required=True)
    dcs.add_argument("--k", type=float, required=True)
    dcs.add_argument("--theta-min", type=float, default=0.1)
    dcs.add_argument("--theta-max", type=float, default=6.18)
    dcs.add_argument("--points", type=int, default=200)
    dcs.add_argument("--out", default=None, metavar="FILE", help="CSV output path (default stdout)")
    dcs.add_argument("--plot", default=None, metavar="FILE", help="also render a figure to FILE")

    expand = sub.add_parser("expand", parents=[budget], help="exact cancellation report")
    expand.add_argument("--order", type=int, required=True, metavar="N")
    return parser


def _xs_from(args, fallback: str) -> list:
    raw = args.x if args.x else fallback
    out = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        float(chunk)  # raises ValueError on garbage
        out.append(chunk)
    if not out:
        raise ValueError("empty x list")
    return out


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000 + 0.5)


def _sum_reports(name, xs, evaluate, expected_of, cfg: SumConfig) -> list:
    """Run one SumResult-producing check per x against its closed form."""
    reports = []
    for xs_text in xs:
        t0 = time.perf_counter()
        failed = None
        try:
            result = evaluate(xs_text, cfg)
        except ConvergenceError as exc:
            result = exc.best
            failed = str(exc)
        with workprec(cfg.precision_bits + 16):
            expected = expected_of(to_mpf(xs_text))
        report = build_report(
            check_name=name,
            inputs={"x": float(xs_text)},
            computed=result.value,
            expected=expected,
            error_bound=result.error_bound,
            tolerance=cfg.tolerance,
            terms_used=result.terms_used,
            elapsed_ms=_ms(t0),
            prec=cfg.precision_bits,
        )
        if failed:
            report = replace(report, passed=False)
            print(f"meansinc: {failed}", file=sys.stderr)
        reports.append(report)
    return reports


def _verify_id1(args, cfg):
    return _sum_reports(
        "id1", _xs_from(args, _ID_XS), lambda x, c: id1_rhs(x, c), lambda xw: mpf(1), cfg
    )


def _verify_id2(args, cfg):
    return _sum_reports(
        "id2",
        _xs_from(args, _ID_XS),
        lambda x, c: id2_rhs(x, c),
        lambda xw: mp.pi**2 * xw * xw / 4,
        cfg,
    )


def _verify_b3(args, cfg):
    return _sum_reports(
        "b3",
        _xs_from(args, _B_XS),
        lambda x, c: cos_mean_sum(x, c),
        lambda xw: mp.pi / mp.sinh(mp.pi * xw),
        cfg,
    )


def _verify_b4(args, cfg):
    return _sum_reports(
        "b4",
        _xs_from(args, _B_XS),
        lambda x, c: sinc_mean_sum(x, c),
        lambda xw: mp.pi / mp.sinh(mp.pi * xw),
        cfg,
    )


def _verify_b5(args, cfg):
    # derivative of a constant: central difference of the id1 sum must vanish
    reports = []
    for xs_text in _xs_from(args, _FD_XS):
        t0 = time.perf_counter()
        failed = None
        with workprec(cfg.precision_bits + 32):
            xw = to_mpf(xs_text)
            hw = to_mpf(args.h)
            try:
                plus = id1_rhs(xw + hw, cfg)
                minus = id1_rhs(xw - hw, cfg)
                fd = (plus.value - minus.value) / (2 * hw)
                bound = (plus.error_bound + minus.error_bound) / (2 * hw)
                terms = plus.terms_used + minus.terms_used
            except ConvergenceError as exc:
                fd, bound, terms = mpf(0), mpf("inf"), 0
                failed = str(exc)
        report = build_report(
            check_name="b5",
            inputs={"x": float(xs_text), "h": args.h},
            computed=fd,
            expected=0,
            error_bound=bound,
            tolerance=cfg.tolerance,
            terms_used=terms,
            elapsed_ms=_ms(t0),
            prec=cfg.precision_bits,
        )
        if failed:
            report = replace(report, passed=False)
            print(f"meansinc: {failed}", file=sys.stderr)
        reports.append(report)
    return reports


def _verify_a4(args, cfg):
    n_max = args.n_max if args.n_max is not None else 8
    reports = []
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        failed = None
        try:
            result = bessel_alt_sum(n, cfg)
        except ConvergenceError as exc:
            result = exc.best
            failed = str(exc)
        with workprec(cfg.precision_bits + 16):
            expected = -(mp.pi**n) / (mp.sqrt(2) * double_factorial(2 * n + 1))
        report = build_report(
            check_name="a4",
            inputs={"n": n},
            computed=result.value,
            expected=expected,
            error_bound=result.error_bound,
            tolerance=cfg.tolerance,
            terms_used=result.terms_used,
            elapsed_ms=_ms(t0),
            prec=cfg.precision_bits,
        )
        if failed:
            report = replace(report, passed=False)
            print(f"meansinc: {failed}", file=sys.stderr)
        reports.append(report)
    return reports


def _exact_report(name, inputs, lhs, rhs, elapsed_ms, prec) -> VerificationReport:
    with workprec(prec + 16):
        diff = abs(to_mpf(Fraction(lhs) - Fraction(rhs)))
    return VerificationReport(
        check_name=name,
        inputs=inputs,
        computed=decimal_str(to_mpf(Fraction(rhs)), prec),
        expected=decimal_str(to_mpf(Fraction(lhs)), prec),
        abs_error=decimal_str(diff, prec),
        error_bound=decimal_str(0, prec),
        passed=bool(lhs == rhs),
        terms_used=0,
        elapsed_ms=elapsed_ms,
    )


def _verify_a5(args, cfg):
    n_max = args.n_max if args.n_max is not None else 50
    reports = []
    for n in range(n_max + 1):
        t0 = time.perf_counter()
        lhs, rhs = a5_sides(n)
        reports.append(_exact_report("a5", {"n": n}, lhs, rhs, _ms(t0), cfg.precision_bits))
    return reports


def _verify_a6(args, cfg):
    n_max = args.n_max if args.n_max is not None else 50
    reports = []
    for n in range(n_max + 1):
        t0 = time.perf_counter()
        lhs, rhs = a6_sides(n)
        reports.append(_exact_report("a6", {"n": n}, lhs, rhs, _ms(t0), cfg.precision_bits))
    return reports


def _verify_cancellation(args, cfg):
    t0 = time.perf_counter()
    rep = id2_cancellation(args.order)
    worst = max((abs(r) for r in rep.residuals), default=Fraction(0))
    ok = rep.all_cancelled and rep.coefficient_of_x2 == Fraction(1, 4)
    report = VerificationReport(
        check_name="cancellation",
        inputs={"order": rep.order},
        computed=decimal_str(to_mpf(rep.coefficient_of_x2), cfg.precision_bits),
        expected=decimal_str(to_mpf(Fraction(1, 4)), cfg.precision_bits),
        abs_error=decimal_str(to_mpf(worst), cfg.precision_bits),
        error_bound=decimal_str(0, cfg.precision_bits),
        passed=bool(ok),
        terms_used=rep.order - 1,
        elapsed_ms=_ms(t0),
    )
    return [report]


_VERIFY_RUNNERS = {
    "id1": _verify_id1,
    "id2": _verify_id2,
    "b3": _verify_b3,
    "b4": _verify_b4,
    "b5": _verify_b5,
    "a4": _verify_a4,
    "a5": _verify_a5,
    "a6": _verify_a6,
    "cancellation": _verify_cancellation,
}


def cmd_verify(args, cfg: SumConfig) -> int:
    if args.target == "all":
        targets = [t for t in _VERIFY_TARGETS if t != "all"]
    else:
        targets = [args.target]
    all_pass = True
    for target in targets:
        for report in _VERIFY_RUNNERS[target](args, cfg):
            print(report.to_json())
            all_pass &= report.passed
    return EXIT_OK if all_pass else EXIT_FAIL


def cmd_scatter_sigma(args, cfg: SumConfig) -> int:
    params = ScatteringParams(args.x, args.k)
    prec = cfg.precision_bits
    closed = sigma_closed(params, prec)
    try:
        pw = sigma_partial_waves(params, cfg)
    except ConvergenceError as exc:
        print(f"meansinc: {exc}", file=sys.stderr)
        pw = None
    try:
        quad = sigma_quadrature(params, cfg, rel_tol=args.rel_tol)
    except RuntimeError as exc:
        print(f"meansinc: {exc}", file=sys.stderr)
        quad = None
    payload = {
        "x": args.x,
        "k": args.k,
        "sigma_closed": decimal_str(closed.sigma, prec),
        "sigma_partial_waves": decimal_str(pw.sigma, prec) if pw else None,
        "pw_error_bound": decimal_str(pw.error_bound, prec) if pw else None,
        "sigma_quadrature": decimal_str(quad.sigma, prec) if quad else None,
        "quad_error_bound": decimal_str(quad.error_bound, prec) if quad else None,
    }
    ok = pw is not None and quad is not None
    if ok:
        with workprec(prec + 16):
            pw_ok = abs(pw.sigma - closed.sigma) <= pw.error_bound
            quad_ok = abs(quad.sigma - closed.sigma) <= (
                to_mpf(args.rel_tol) * closed.sigma + quad.error_bound
            )
        payload["pw_agrees"] = bool(pw_ok)
        payload["quad_agrees"] = bool(quad_ok)
        ok = bool(pw_ok and quad_ok)
    print(json.dumps(payload))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scatter_dcs(args, cfg: SumConfig) -> int:
    if args.points < 1:
        raise ValueError("points must be >= 1")
    lo, hi = args.theta_min, args.theta_max
    if not lo <= hi:
        raise ValueError("theta-min must not exceed theta-max")
    if lo < FORWARD_EXCLUSION or hi > 2 * 3.141592653589793 - FORWARD_EXCLUSION:
        raise ValueError("theta grid enters the forward exclusion zone")
    params = ScatteringParams(args.x, args.k)
    prec = cfg.precision_bits
    thetas = [
        lo + (hi - lo) * i / (args.points - 1) if args.points > 1 else lo
        for i in range(args.points)
    ]
    rows = []
    for theta in thetas:
        f, bound = amplitude_with_bound(theta, params, cfg)
        with workprec(prec + 16):
            dcs = f.real**2 + f.imag**2
            dcs_bound = 2 * abs(f) * bound + bound**2
        rows.append((theta, decimal_str(dcs, prec), decimal_str(dcs_bound, prec)))
    lines = ["theta,dcs,error_bound"]
    lines += [f"{theta!r},{val},{err}" for theta, val, err in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import dcs_figure, save_figure

        fig = dcs_figure(thetas, [float(v) for _, v, _ in rows], args.x, args.k)
        save_figure(fig, args.plot)
    return EXIT_OK


def cmd_expand(args, cfg: SumConfig) -> int:
    rep = id2_cancellation(args.order)
    ok = rep.all_cancelled and rep.coefficient_of_x2 == Fraction(1, 4)
    payload = {
        "order": rep.order,
        "coefficient_of_x2": str(rep.coefficient_of_x2),
        "residuals_checked": len(rep.residuals),
        "nonzero_residuals": [
            [n, str(r)] for n, r in zip(range(2, rep.order + 1), rep.residuals) if r != 0
        ],
        "all_cancelled": rep.all_cancelled,
        "negative_zeta_uses": rep.negative_zeta_uses,
    }
    print(json.dumps(payload))
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SumConfig(
            tolerance=args.tol,
            max_terms=args.max_terms,
            tail_order=args.tail_order,
            precision_bits=args.precision_bits,
        )
        if args.command == "verify":
            return cmd_verify(args, cfg)
        if args.command == "scatter":
            if args.mode == "sigma":
                return cmd_scatter_sigma(args, cfg)
            return cmd_scatter_dcs(args, cfg)
        if args.command == "expand":
            if args.order < 2:
                parser.error("expand requires --order >= 2")
            return cmd_expand(args, cfg)
        parser.error(f"unknown command {args.command!r}")
    except ValueError as exc:
        print(f"meansinc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
