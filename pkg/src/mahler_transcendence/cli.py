"""Command-line front end.

Exit codes: 0 conclusive verdict, 1 input or runtime error, 2 inconclusive
(eigenvalue test only), 3 internal error (the two tests disagree or a
rational certificate failed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .arith import Poly, format_rational
from .document import DocumentError, load_equation
from .eigen import DEFAULT_MAX_TERMS, eigen_verdict
from .equation import CoefficientError, EquationError, compute_coefficients, degree_bounds
from .universal import (CertificationError, build_hankel, dump_matrix, exact_rank, hankel_shape,
                        kappa, universal_verdict)
from .verdict import Evidence, Tag

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_INTERNAL = 3


class InternalError(RuntimeError):
    pass


def _equation_echo(eq) -> dict:
    return {
        "name": eq.name,
        "k": eq.k,
        "d": eq.d,
        "H": eq.height,
        "v": eq.order_at_zero,
        "kappa": kappa(eq),
    }


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def _write_matrix(eq, path: str, extra_kappa: int = 0):
    kap = kappa(eq) + extra_kappa
    rows, cols = hankel_shape(eq, kap)
    m = build_hankel(compute_coefficients(eq, rows + cols - 2), eq, kap)
    with open(path, "w") as fh:
        fh.write(dump_matrix(m))


def analyze(eq, args) -> tuple[dict, int]:
    report: dict = {"equation": _equation_echo(eq)}
    timing: dict = {}
    eigen = universal = None

    if args.universal_only:
        report["eigen"] = {"skipped": "--universal-only"}
    else:
        t0 = time.perf_counter()
        eigen, eig_report = eigen_verdict(eq, args.tol, args.max_terms)
        timing["eigen"] = _ms(t0)
        report["eigen"] = eig_report.to_dict()
        report["eigen"]["char_poly_text"] = eig_report.char_poly.poly.to_str("x", descending=True)

    skip_universal = args.eigen_only or (args.fast and eigen is not None and eigen.conclusive)
    if skip_universal:
        report["universal"] = {"skipped": "--eigen-only" if args.eigen_only else "--fast"}
    else:
        t0 = time.perf_counter()
        universal = universal_verdict(eq)
        timing["universal"] = _ms(t0)
        report["universal"] = universal.to_dict()

    if eigen is not None and universal is not None and eigen.conclusive and eigen.tag != universal.tag:
        raise InternalError(
            f"eigenvalue test says {eigen.tag.value}, universal test says {universal.tag.value}")

    if args.dump_matrix:
        t0 = time.perf_counter()
        _write_matrix(eq, args.dump_matrix)
        timing["dump_matrix"] = _ms(t0)

    final = universal if universal is not None else eigen
    report["verdict"] = final.tag.value
    report["timing_ms"] = timing
    code = EXIT_OK if final.conclusive else EXIT_INCONCLUSIVE
    return report, code


def _print_analysis(report: dict, out):
    e = report["equation"]
    title = e["name"] or "equation"
    print(f"{title}: k = {e['k']}, d = {e['d']}, H = {e['H']}, v = {e['v']}, kappa = {e['kappa']}", file=out)
    eig = report["eigen"]
    print("eigenvalue test:", file=out)
    if "skipped" in eig:
        print(f"  skipped ({eig['skipped']})", file=out)
    else:
        print(f"  p_F(x) = {eig['char_poly_text']}", file=out)
        if eig["applicable"]:
            kp = ", ".join(str(n) for n in eig["k_power_roots"]) or "none"
            print(f"  roots that are powers of k (exponents): {kp}", file=out)
            if eig["roots"]:
                shown = ", ".join(f"{re:.10g}" if abs(im) < 1e-12 else f"{re:.10g}{im:+.10g}i"
                                  for re, im in eig["roots"])
                print(f"  roots: {shown}", file=out)
            if eig["lambda_estimate"] is not None:
                print(f"  lambda_F estimate: {eig['lambda_estimate']:.10g}", file=out)
        v = eig["verdict"]
        print(f"  verdict: {_describe(v)}", file=out)
        if eig["evidence"] == Evidence.NUMERIC.value:
            print("  note: eigenvalue identified numerically; the universal test below confirms it", file=out)
    uni = report["universal"]
    print("universal test:", file=out)
    if "skipped" in uni:
        print(f"  skipped ({uni['skipped']})", file=out)
    else:
        rows, cols = uni["shape"]
        print(f"  Hankel matrix {rows} x {cols}, rank {uni['rank']}", file=out)
        print(f"  verdict: {_describe(uni)}", file=out)
    print(f"result: {report['verdict']}", file=out)


def _describe(v: dict) -> str:
    if v["tag"] == Tag.RATIONAL.value:
        p, q = Poly.from_literals(v["P"]), Poly.from_literals(v["Q"])
        return f"rational, F(z) = P/Q with P = {p}, Q = {q}"
    if v["tag"] == Tag.TRANSCENDENTAL.value:
        return "transcendental" + (f" ({v['evidence']} evidence)" if "evidence" in v else "")
    return f"inconclusive: {v['reason']}" + (f" ({v['detail']})" if v.get("detail") else "")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="equation document (JSON)")
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    parser = argparse.ArgumentParser(
        prog="mahler-transcendence",
        description="Decide rationality or transcendence of a Mahler function.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="run the eigenvalue and universal tests")
    only = p.add_mutually_exclusive_group()
    only.add_argument("--universal-only", action="store_true")
    only.add_argument("--eigen-only", action="store_true")
    p.add_argument("--fast", action="store_true", help="stop at the first conclusive verdict")
    p.add_argument("--tol", type=float, default=1e-6, help="eigenvalue estimator tolerance")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                   help="series truncation cap for radial evaluation")
    p.add_argument("--dump-matrix", metavar="PATH", help="also write the Hankel matrix")

    p = sub.add_parser("coeffs", parents=[common], help="print f(0..N)")
    p.add_argument("-n", type=int, required=True, dest="n")

    sub.add_parser("bounds", parents=[common], help="degree bounds and kappa")

    p = sub.add_parser("matrix", parents=[common], help="dump the Hankel matrix")
    p.add_argument("--dump-matrix", metavar="PATH", help="write to PATH instead of stdout")
    return parser


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for inconclusive here
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        eq = load_equation(args.file)
        if args.command == "analyze":
            report, code = analyze(eq, args)
            if args.json:
                print(json.dumps(report, indent=2), file=out)
            else:
                _print_analysis(report, out)
            return code
        if args.command == "coeffs":
            prefix = compute_coefficients(eq, args.n)
            if args.json:
                print(json.dumps({"coefficients": [format_rational(x) for x in prefix.coeffs],
                                  "source": list(prefix.source)}, indent=2), file=out)
            else:
                print(" ".join(format_rational(x) for x in prefix.coeffs), file=out)
            return EXIT_OK
        if args.command == "bounds":
            bq, bp = degree_bounds(eq)
            kap = kappa(eq)
            rows, cols = hankel_shape(eq, kap)
            data = {"deg_Q_bound": bq, "deg_P_bound": bp, "kappa": kap, "matrix_shape": [rows, cols],
                    "coefficients_needed": rows + cols - 1}
            if args.json:
                print(json.dumps(data, indent=2), file=out)
            else:
                print(f"deg Q <= {bq}\ndeg P <= {bp}\nkappa = {kap}\nmatrix {rows} x {cols}", file=out)
            return EXIT_OK
        if args.command == "matrix":
            kap = kappa(eq)
            rows, cols = hankel_shape(eq, kap)
            m = build_hankel(compute_coefficients(eq, rows + cols - 2), eq, kap)
            text = dump_matrix(m)
            if args.dump_matrix:
                with open(args.dump_matrix, "w") as fh:
                    fh.write(text)
            if args.json:
                print(json.dumps({"shape": [rows, cols], "rank": exact_rank(m),
                                  "rows": [[format_rational(x) for x in r] for r in m.to_rows()]}), file=out)
            elif not args.dump_matrix:
                out.write(text)
            return EXIT_OK
    except (InternalError, CertificationError) as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except (DocumentError, EquationError, CoefficientError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    return EXIT_ERROR


def main():
    sys.exit(run_cli())
