"""Command-line front end.

Usage:
    fewdist analyze CONFIG.json [--certificates] [--format json|text] [--out PATH]
    fewdist catalog NAME [--n N] [--d D] [--w W] [--q Q] [--out PATH]
    fewdist verify --suite {lemma4,lemma5,lemma6,theorem3,theorem3-span,bbs,evaluation,integrality,sharpness,all}
    fewdist recover --k "2,-1" [--tol 1e-9]

``-`` as an input or output path means stdin or stdout. Exit status is 0 on
success, 1 when a verification suite has a failing check and 2 for input
errors (with a JSON error object on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .catalog import GENERATORS, build
from .errors import FewDistError
from .field import parse_rational
from .formats import config_from_json, entry_to_json
from .geometry import PointSet, as_sdm, distance_spectrum
from .invariants import analyze, recover_distances
from .polyspace import bbs_check, evaluation_certificate, independence_theorem3, theorem3_direct_sum
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _certificates(cfg) -> list[dict]:
    certs = []
    D = as_sdm(cfg)
    report_s = distance_spectrum(D).s
    if report_s >= 2:
        for i in range(report_s):
            certs.append(evaluation_certificate(D, i).to_json())
    if isinstance(cfg, PointSet):
        if report_s >= 2:
            for i in range(report_s):
                certs.append(independence_theorem3(cfg, i).to_json())
                certs.append(theorem3_direct_sum(cfg, i).to_json())
        certs.append(bbs_check(cfg).to_json())
    return certs


def _report_text(rep: dict) -> str:
    lines = [
        f"n = {rep['n']}, d = {rep['d']}, s = {rep['s']}",
        "squared distances: " + ", ".join(rep["spectrum_approx"]),
        "k: " + ", ".join(f"{a} ({'integer' if ok else 'not integer'})" for a, ok in zip(rep["k_approx"], rep["k_integral"])),
        f"N = {rep['N_new']} (legacy {rep['N_legacy']}), k cap = {rep['k_cap']}",
    ]
    for key, th in rep["thresholds"].items():
        lines.append(f"threshold {key}: |X| >= {th['min_size']}: {'met' if th['met'] else 'not met'}")
    for c in rep["certificates"]:
        lines.append(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['claim']} rank {c['achieved_rank']}/{c['expected_rank']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    cfg = config_from_json(_read_json(args.input))
    report = analyze(cfg)
    if args.certificates:
        report.certificates = _certificates(cfg)
    rep = report.to_json()
    _emit(_dump(rep) if args.format == "json" else _report_text(rep), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "d", "w", "q") if getattr(args, k) is not None}
    try:
        entry = build(args.name, **params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {args.name}: {exc}") from exc
    _emit(_dump(entry_to_json(entry)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, jobs=args.jobs)
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dump({"suite": args.suite, "pass": ok, "results": [r.to_json() for r in results]})
    else:
        text = "".join(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}: {r.name}\n" for r in results)
        text += f"{sum(r.passed for r in results)}/{len(results)} checks passed\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_recover(args) -> int:
    try:
        ks = [parse_rational(t) for t in args.k.split(",")]
    except FewDistError as exc:
        raise InputError(str(exc)) from exc
    gammas = recover_distances(ks, tol=args.tol)
    if args.format == "json":
        text = _dump({"k": [str(Fraction(k)) for k in ks], "sq_distances": [repr(g) for g in gammas]})
    else:
        text = ", ".join(f"{g:.12g}" for g in gammas) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fewdist", description="Integrality invariants of s-distance sets")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=["json", "text"], default=fmt)
        p.add_argument("--out", default=None, help="output path ('-' for stdout)")

    p = sub.add_parser("analyze", help="compute invariants of a configuration")
    p.add_argument("input", help="configuration JSON ('-' for stdin)")
    p.add_argument("--certificates", action="store_true", help="attach rank certificates")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="write a catalog configuration")
    p.add_argument("name", choices=sorted(GENERATORS))
    for flag in ("n", "d", "w", "q"):
        p.add_argument(f"--{flag}", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run a certificate suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--jobs", type=int, default=1)
    common(p, fmt="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recover", help="recover squared distances from invariants")
    p.add_argument("--k", required=True, help='comma-separated invariants, e.g. "2,-1"')
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    common(p, fmt="text")
    p.set_defaults(func=cmd_recover)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, FewDistError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err) + "\n")
        return EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": "ValueError", "message": str(exc)}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
