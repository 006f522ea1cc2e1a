"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error
(bad arguments, malformed observable, point outside the disc), 3 numeric
setup failure (cutoff or quadrature could not be set up, evaluation error).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .errors import (
    CutoffError,
    DegreeOverflowError,
    DomainError,
    NonTerminatingSeriesError,
    ObservableEvaluationError,
    ObservableSyntaxError,
    PathError,
    QuadratureError,
)
from .kernels import certified_cutoff, kernel, kernel_series
from .observable import parse_observable
from .quantization import berezin_transform, lower_symbol, quantize_observable
from .su11 import compare_with_zernike
from .verify import SUITES, run_suites
from .zernike import PATHS, eval_zernike

__all__ = ["build_parser", "run_command", "main", "format_float", "format_complex", "matrix_csv"]

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_NEGATIVE_NUMBER = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?([+-](\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?[ij]?$")


def format_float(x):
    return f"{float(x):.17g}"


def format_complex(z):
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


def parse_complex(text):
    """Accept Python-style ``0.3+0.4j`` as well as ``0.3+0.4i``."""
    cleaned = text.strip().replace(" ", "")
    if cleaned.endswith("i"):
        cleaned = cleaned[:-1] + "j"
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def matrix_csv(A, chop=0.0):
    """Row-major CSV with a ``# n=.. alpha=.. M=.. provenance=..`` header.

    Real and imaginary parts smaller than ``chop`` times the largest entry
    are written as 0. Real matrices are written as plain numbers, others
    as ``a+bj``.
    """
    lines = [f"# n={A.n} alpha={format_float(A.alpha)} M={A.M} provenance={A.provenance}"]
    entries = np.array(A.entries, dtype=complex)
    if chop and entries.size:
        tol = chop * float(np.max(np.abs(entries)))
        re, im = entries.real.copy(), entries.imag.copy()
        re[np.abs(re) <= tol] = 0.0
        im[np.abs(im) <= tol] = 0.0
        entries = re + 1j * im
    real = not np.any(np.imag(entries))
    fmt = (lambda v: format_float(v.real)) if real else format_complex
    for row in entries:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let negative complex positionals such as -0.2j or -1+0.5i through
        self._negative_number_matcher = _NEGATIVE_NUMBER

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def build_parser():
    parser = _Parser(prog="zernike-disc", description="2D-Zernike kernels, coherent states and quantization")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--alpha", type=float, default=None, help="single alpha (default: grid -0.5, 0, 0.5, 2)")
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")

    p = sub.add_parser("eval-poly", help="evaluate P_{m,n}^alpha(z)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("alpha", type=float)
    p.add_argument("z", type=parse_complex)
    p.add_argument("--path", choices=PATHS, default="k_sum")

    p = sub.add_parser("kernel", help="evaluate E_n^alpha(z, wbar)")
    p.add_argument("n", type=int)
    p.add_argument("alpha", type=float)
    p.add_argument("z", type=parse_complex)
    p.add_argument("w", type=parse_complex)
    p.add_argument("--series", type=int, metavar="M", help="use the truncated series with M terms")

    p = sub.add_parser("quantize", help="matrix of A_f as CSV")
    p.add_argument("--f", required=True, help="observable expression")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--csv", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument(
        "--chop",
        type=float,
        default=1e-14,
        help="print parts below CHOP * max|entry| as 0 (quadrature rounding); 0 disables",
    )

    p = sub.add_parser("berezin", help="Berezin transform B_n^alpha[f](z)")
    p.add_argument("--f", required=True)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lower-symbol", action="store_true", help="also print <z|A_f|z> for comparison")

    p = sub.add_parser("compare-su11", help="commutator spectra: Zernike quantization vs SU(1,1)")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--M", type=int, default=12)
    p.add_argument("--json", metavar="PATH")
    return parser


def _emit(text, path, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_verify(args, out):
    report = run_suites([args.suite] if args.suite != "all" else "all", args.alpha, args.max_m)
    suites = report["suites"]
    if args.json != "-":
        for rep in suites:
            for c in rep["checks"]:
                status = "PASS" if c["passed"] else "FAIL"
                out.write(
                    f"{status} {rep['suite']}.{c['id']} residual={c['residual']:.3e} "
                    f"threshold={c['threshold']:.0e} {json.dumps(c['params'], sort_keys=True)}\n"
                )
        out.write(f"overall: {'PASS' if report['passed'] else 'FAIL'} ({report['timing']['seconds']:.2f} s)\n")
    if args.json:
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.json, out)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def _cmd_eval_poly(args, out):
    out.write(format_complex(eval_zernike(args.m, args.n, args.alpha, args.z, path=args.path)) + "\n")
    return EXIT_OK


def _cmd_kernel(args, out):
    if args.series:
        kv = kernel_series(args.n, args.alpha, args.z, args.w, args.series)
    else:
        kv = kernel(args.n, args.alpha, args.z, args.w)
    line = f"{format_complex(kv.value)} path={kv.path}"
    if kv.tail is not None:
        line += f" terms={kv.terms} tail_bound={kv.tail:.3e}"
    out.write(line + "\n")
    return EXIT_OK


def _cmd_quantize(args, out):
    A = quantize_observable(parse_observable(args.f), args.n, args.alpha, args.M)
    _emit(matrix_csv(A, args.chop), args.csv, out)
    return EXIT_OK


def _cmd_berezin(args, out):
    f = parse_observable(args.f)
    value = berezin_transform(f, args.z, args.n, args.alpha)
    out.write(format_complex(value) + "\n")
    if args.lower_symbol:
        M = certified_cutoff(args.n, args.alpha, abs(args.z), rel_tol=1e-14)
        A = quantize_observable(f, args.n, args.alpha, M)
        out.write(f"lower_symbol {format_complex(lower_symbol(A, args.z))}\n")
    return EXIT_OK


def _cmd_compare(args, out):
    report = compare_with_zernike(args.n, args.alpha, args.eta, args.M)
    if args.json:
        _emit(json.dumps({"format": "report_v1", **report}, indent=2, sort_keys=True) + "\n", args.json, out)
    if args.json != "-":
        out.write("m, [A_z,A_zbar]_mm, [K+,K-]_mm\n")
        for m, (a, b) in enumerate(zip(report["zernike_diagonal"], report["su11_diagonal"])):
            out.write(f"{m}, {format_float(a)}, {format_float(b)}\n")
        out.write(report["summary"] + "\n")
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "eval-poly": _cmd_eval_poly,
    "kernel": _cmd_kernel,
    "quantize": _cmd_quantize,
    "berezin": _cmd_berezin,
    "compare-su11": _cmd_compare,
}

_USAGE_ERRORS = (ObservableSyntaxError, DegreeOverflowError, DomainError, PathError)
_NUMERIC_ERRORS = (
    CutoffError,
    QuadratureError,
    ObservableEvaluationError,
    NonTerminatingSeriesError,
    np.linalg.LinAlgError,
    FloatingPointError,
)


def run_command(argv, out=None):
    """Run the CLI on ``argv`` and return the exit code."""
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC


def main():
    sys.exit(run_command(sys.argv[1:]))
