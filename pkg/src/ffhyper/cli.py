"""Command-line front end: trace, verify, identities, bench.

Exit codes: 0 when everything requested passed, 1 when at least one
verification failed (trace mismatch, residual over tolerance, or a missed
field in a sweep), 2 for invalid input, including preconditions not met
when a single computation was requested.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .curves import CurveSpec, trace_naive, trace_short_quartic, trace_short_sextic
from .errors import NotApplicable, PrecisionFailure
from .fields import build_field
from .harness import (
    VerifyConfig,
    identities_passed,
    render_report,
    run_bench,
    run_identities,
    run_verify,
    verify_passed,
    write_report,
)

_THEOREM_ALIASES = {
    "1.1": "thm_1_1", "1.2": "thm_1_2", "3.1": "thm_3_1", "3.2": "thm_3_2",
    "thm_1_1": "thm_1_1", "thm_1_2": "thm_1_2",
    "thm_3_1": "thm_3_1", "thm_3_2": "thm_3_2",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffhyper",
        description="Elliptic-curve traces over F_q via finite-field "
                    "hypergeometric sums, checked against exact point counts.")
    parser.add_argument("--version", action="version", version=f"ffhyper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("trace", help="trace of y^2 = x^3 + a x + b on one field")
    tr.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    tr.add_argument("--e", type=int, default=1, help="extension degree (default 1)")
    tr.add_argument("--a", required=True,
                    help="coefficient a ('7' for prime fields, '2,1' digit form for e > 1)")
    tr.add_argument("--b", required=True, help="coefficient b, same encoding")
    tr.add_argument("--method", choices=("naive", "thm1", "thm2", "all"), default="all",
                    help="naive count, the mod-6 route (thm1), the mod-4 route "
                         "(thm2), or everything applicable")
    tr.add_argument("--format", choices=("text", "json"), default="text")
    tr.add_argument("--output", help="write the report here instead of stdout")

    ver = sub.add_parser("verify", help="sweep fields and check formulas against counts")
    ver.add_argument("--q-min", type=int, default=5)
    ver.add_argument("--q-max", type=int, default=100)
    ver.add_argument("--congruence", choices=("mod6", "mod4", "both"), default="both")
    ver.add_argument("--theorems", nargs="+", default=(),
                     choices=sorted(_THEOREM_ALIASES),
                     help="restrict to these formulas (default: all in the class)")
    ver.add_argument("--sampling", choices=("exhaustive", "random", "auto"),
                     default="auto",
                     help="auto = exhaustive up to --exhaustive-limit, sampled above")
    ver.add_argument("--samples", type=int, default=200,
                     help="curves per field and formula when sampling")
    ver.add_argument("--seed", type=int, help="required whenever sampling happens")
    ver.add_argument("--exhaustive-limit", type=int, default=49)
    ver.add_argument("--jobs", type=int, default=1, help="fields processed in parallel")
    ver.add_argument("--timing", action="store_true",
                     help="add per-case elapsed_ms (report is no longer byte-stable)")
    ver.add_argument("--max-residual", type=float, default=1e-4,
                     help="fail cases whose |raw - nearest integer| reaches this")
    ver.add_argument("--max-imag-coeff", type=float, default=1e-6,
                     help="fail cases with |Im raw| >= coeff * q")
    ver.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ver.add_argument("--output", help="write the report here instead of stdout")

    ident = sub.add_parser("identities", help="character-sum identity suites")
    ident.add_argument("--q-min", type=int, default=5)
    ident.add_argument("--q-max", type=int, default=200)
    ident.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ident.add_argument("--output", help="write the report here instead of stdout")

    bench = sub.add_parser("bench", help="time direct vs DFT Gauss tables and traces")
    bench.add_argument("--q", type=int, default=10009,
                       help="target size (rounded up to an odd prime power)")
    bench.add_argument("--reps", type=int, default=3, help="best-of repetitions")
    bench.add_argument("--format", choices=("json", "text"), default="text")
    bench.add_argument("--output", help="write the report here instead of stdout")
    return parser


# ---------------------------------------------------------------------------
# trace


def _trace_method_entry(field, fn, a: int, b: int) -> dict:
    entry = {"trace": None, "status": "", "reason": "", "aux": ""}
    try:
        rep = fn(field, a, b)
    except NotApplicable as exc:
        entry["status"], entry["reason"] = "skip", exc.reason
        return entry
    except PrecisionFailure as exc:
        entry["status"], entry["reason"] = "fail", f"precision_failure: {exc}"
        return entry
    entry["trace"] = rep.trace
    entry["status"] = "computed"
    for key in ("k", "h"):
        if key in rep.auxiliary:
            entry["aux"] = f"{key}={rep.auxiliary[key]}"
    return entry


def cmd_trace(args) -> int:
    field = build_field(args.p, args.e)
    a = field.parse_element(args.a)
    b = field.parse_element(args.b)
    curve = CurveSpec.short(a, b)
    naive = trace_naive(field, curve)

    requested = {"naive": ("naive",), "thm1": ("thm_1_1",), "thm2": ("thm_1_2",),
                 "all": ("thm_1_1", "thm_1_2")}[args.method]
    single = args.method in ("thm1", "thm2")
    fns = {"thm_1_1": trace_short_sextic, "thm_1_2": trace_short_quartic}

    methods = {}
    if args.method in ("naive", "all"):
        methods["naive"] = {"trace": naive.trace, "status": "computed",
                            "reason": "", "aux": ""}
        if "singular" in naive.flags:
            methods["naive"]["aux"] = "singular"
    for token in requested:
        if token == "naive":
            continue
        entry = _trace_method_entry(field, fns[token], a, b)
        if single and entry["status"] == "skip":
            print(f"error: {token} not applicable: {entry['reason']}", file=sys.stderr)
            return 2
        methods[token] = entry

    computed = {k: v for k, v in methods.items() if k != "naive" and v["status"] == "computed"}
    mismatches = [k for k, v in computed.items() if v["trace"] != naive.trace]
    failed = [k for k, v in methods.items() if v["status"] == "fail"]
    agree = not mismatches and not failed

    report = {
        "command": "trace",
        "version": __version__,
        "q": field.q, "p": field.p, "e": field.e,
        "curve": f"y^2 = x^3 + {field.format_element(a)}*x + {field.format_element(b)}",
        "trace_naive": naive.trace,
        "count": field.q + 1 - naive.trace,
        "methods": methods,
        "agree": agree,
    }
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [f"field: q = {field.q} (p = {field.p}, e = {field.e})",
                 f"curve: {report['curve']}",
                 f"naive: trace = {naive.trace} (count = {report['count']})"
                 + (" [singular]" if "singular" in naive.flags else "")]
        for token, entry in methods.items():
            if token == "naive":
                continue
            if entry["status"] == "computed":
                extra = f" [{entry['aux']}]" if entry["aux"] else ""
                verdict = "agree" if entry["trace"] == naive.trace else "MISMATCH"
                lines.append(f"{token}: trace = {entry['trace']}{extra} -> {verdict}")
            else:
                lines.append(f"{token}: {entry['status']} ({entry['reason']})")
        lines.append(f"result: {'OK' if agree else 'FAILED'}")
        text = "\n".join(lines) + "\n"
    write_report(text, args.output)
    return 0 if agree else 1


# ---------------------------------------------------------------------------
# sweeps


def cmd_verify(args) -> int:
    config = VerifyConfig(
        q_min=args.q_min, q_max=args.q_max, congruence=args.congruence,
        theorems=tuple(_THEOREM_ALIASES[t] for t in args.theorems),
        sampling=args.sampling, samples=args.samples, seed=args.seed,
        exhaustive_limit=args.exhaustive_limit, jobs=args.jobs,
        timing=args.timing, max_residual=args.max_residual,
        max_imag_coeff=args.max_imag_coeff)
    report = run_verify(config)
    write_report(render_report(report, args.format), args.output)
    return 0 if verify_passed(report) else 1


def cmd_identities(args) -> int:
    report = run_identities(args.q_min, args.q_max)
    write_report(render_report(report, args.format), args.output)
    return 0 if identities_passed(report) else 1


def cmd_bench(args) -> int:
    report = run_bench(args.q, args.reps)
    write_report(render_report(report, args.format), args.output)
    return 0


_DISPATCH = {"trace": cmd_trace, "verify": cmd_verify,
             "identities": cmd_identities, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
