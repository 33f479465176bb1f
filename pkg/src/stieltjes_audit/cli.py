"""Command line front end: compute constants, run identity audits, emit reports.

Subcommands:

  compute   one constant family: gamma_n, eta_n, bell, gamma_deriv, dn
  verify    evaluate identity cases and print one verdict line per case
  report    the full machine readable document (json by default)
  list      show registry entries without evaluating anything

Precision is resolved from the --prec flag, then the STIELTJES_PREC
environment variable, then the 256 bit default; values below 64 bits are
rejected.  Numbers are rendered as decimal strings with a digit count
derived from the working precision, so identical configurations produce
byte identical output.

Exit codes: 0 success; 1 a rigorous case failed; 2 usage error;
3 non-convergence; 4 output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import platform
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2

from . import __version__, auditor, bell, hasse, zeta
from .exact import factorial
from .xreal import NonConvergenceError, as_xreal, decimal_digits_for

EXIT_OK = 0
EXIT_RIGOROUS = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4

FAMILY_BY_FLAG = {
    "rigorous": auditor.RIGOROUS,
    "section2": auditor.SECTION2_AUDIT,
}

COMPUTE_TARGETS = ("gamma_n", "eta_n", "bell", "gamma_deriv", "dn")


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation; immutable so repeated runs cannot drift."""

    precision_bits: int = 256
    tolerance: Optional[float] = None
    case_ids: Optional[tuple[str, ...]] = None
    family: Optional[str] = None
    fmt: str = "text"
    jobs: int = 1
    output: Optional[str] = None

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stieltjes-audit",
        description="High precision Stieltjes constants and identity audits.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_output(p: argparse.ArgumentParser, formats=("json", "csv", "text"),
                   default="text") -> None:
        p.add_argument("--format", dest="fmt", choices=formats, default=default,
                       help="output format (default: %(default)s)")
        p.add_argument("--output", metavar="PATH", default=None,
                       help="write to PATH instead of stdout")

    def add_prec(p: argparse.ArgumentParser) -> None:
        p.add_argument("--prec", type=int, default=None, metavar="BITS",
                       help="working precision in bits, at least 64 "
                            "(default: STIELTJES_PREC or 256)")

    def add_filters(p: argparse.ArgumentParser) -> None:
        p.add_argument("--id", action="append", dest="ids", metavar="CASE",
                       default=None, help="restrict to this case id (repeatable)")
        p.add_argument("--family", choices=sorted(FAMILY_BY_FLAG), default=None,
                       help="restrict to one registry family")

    def add_run(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=None,
                       help="override every case tolerance")
        p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="evaluate cases on N threads (default 1)")

    comp = sub.add_parser("compute", help="evaluate one constant family")
    comp.add_argument("target", choices=COMPUTE_TARGETS)
    comp.add_argument("--n", type=int, default=0, help="order (default 0)")
    comp.add_argument("--u", default="1", metavar="RAT",
                      help="gamma_n argument, a rational such as 3/2 (default 1)")
    comp.add_argument("--x", default="1", metavar="RAT",
                      help="gamma_deriv evaluation point (default 1)")
    comp.add_argument("--args", dest="values", default=None, metavar="LIST",
                      help="comma separated rationals; evaluate bell at these")
    add_prec(comp)
    comp.add_argument("--output", metavar="PATH", default=None,
                      help="write to PATH instead of stdout")
    comp.set_defaults(handler=cmd_compute)

    ver = sub.add_parser("verify", help="run identity cases")
    add_filters(ver)
    add_run(ver)
    add_prec(ver)
    add_output(ver, default="text")
    ver.set_defaults(handler=cmd_verify)

    rep = sub.add_parser("report", help="emit the full report document")
    add_filters(rep)
    add_run(rep)
    add_prec(rep)
    add_output(rep, default="json")
    rep.set_defaults(handler=cmd_report)

    lst = sub.add_parser("list", help="list registry cases")
    add_filters(lst)
    add_output(lst, default="text")
    lst.set_defaults(handler=cmd_list)

    return parser


def _resolve_precision(flag_value: Optional[int],
                       parser: argparse.ArgumentParser) -> int:
    value = flag_value
    if value is None:
        raw = os.environ.get("STIELTJES_PREC")
        if raw is None:
            return 256
        try:
            value = int(raw)
        except ValueError:
            parser.error(f"STIELTJES_PREC is not an integer: {raw!r}")
    if value < 64:
        parser.error("precision must be at least 64 bits")
    return value


def _config_from_args(args, parser) -> RunConfig:
    prec = _resolve_precision(getattr(args, "prec", None), parser)
    family = FAMILY_BY_FLAG[args.family] if getattr(args, "family", None) else None
    ids = tuple(args.ids) if getattr(args, "ids", None) else None
    tol = getattr(args, "tol", None)
    if tol is not None and tol <= 0:
        parser.error("--tol must be positive")
    jobs = getattr(args, "jobs", 1)
    if jobs < 1:
        parser.error("--jobs must be at least 1")
    return RunConfig(precision_bits=prec, tolerance=tol, case_ids=ids,
                     family=family, fmt=getattr(args, "fmt", "text"),
                     jobs=jobs, output=args.output)


def _rational(text: str, flag: str, parser) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        parser.error(f"{flag} expects a rational such as 3/2, got {text!r}")


def _write_output(text: str, path: Optional[str]) -> int:
    try:
        if path is None:
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def exit_code_for(reports) -> int:
    """Worst rigorous outcome wins; audit deviations never fail the run."""
    saw_nonconvergence = False
    for rep in reports:
        if rep.family != auditor.RIGOROUS:
            continue
        if rep.verdict == auditor.FAIL:
            return EXIT_RIGOROUS
        if rep.verdict == auditor.ERROR:
            if "non-convergence" in rep.note or "NonConvergence" in rep.note:
                saw_nonconvergence = True
            else:
                return EXIT_RIGOROUS
    return EXIT_NONCONVERGENCE if saw_nonconvergence else EXIT_OK


# ---------------------------------------------------------------- compute

def cmd_compute(args, parser) -> int:
    prec = _resolve_precision(args.prec, parser)
    digits = decimal_digits_for(prec)
    if args.n < 0:
        parser.error("--n must be nonnegative")
    # conservative roundoff bound used where the route is otherwise exact
    bound = as_xreal(Fraction(factorial(args.n + 2), 2 ** (prec - 8)), prec)
    lines = []
    try:
        if args.target == "gamma_n":
            u = _rational(args.u, "--u", parser)
            if u <= 0:
                parser.error("--u must be positive")
            sv = hasse.stieltjes_gamma(args.n, u, prec)
            lines.append(f"gamma_{args.n}({args.u}) = {sv.value.decimal(digits)}")
            lines.append(f"error_estimate = {sv.error_estimate.decimal(6)}")
            lines.append(f"terms = {sv.n_terms}")
        elif args.target == "eta_n":
            etas = hasse.eta_sequence(args.n + 1, prec)
            lines.append(f"eta_{args.n} = {etas[args.n].decimal(digits)}")
            lines.append(f"error_bound = {bound.decimal(6)}")
            lines.append(f"terms = {args.n + 1}")
        elif args.target == "bell":
            poly = bell.complete_bell_poly(args.n)
            lines.append(f"B_{args.n} = {poly.to_string()}")
            if args.values is not None:
                xs = [_rational(tok.strip(), "--args", parser)
                      for tok in args.values.split(",")] if args.values else []
                if len(xs) != args.n:
                    parser.error(f"--args needs exactly {args.n} values")
                lines.append(f"value = {poly(xs)}")
            else:
                lines.append(f"value at all ones = {poly([1] * args.n)}")
            lines.append(f"monomials = {len(poly.terms)}")
        elif args.target == "gamma_deriv":
            x = _rational(args.x, "--x", parser)
            if x <= 0:
                parser.error("--x must be positive")
            val = zeta.gamma_derivative(args.n, x, prec)
            lines.append(f"gamma^({args.n})({args.x}) = {val.decimal(digits)}")
            lines.append(f"error_bound = {bound.decimal(6)}")
            lines.append(f"monomials = {bell.partition_count(args.n)}")
        else:
            if args.n > 6:
                parser.error("--n must be at most 6 for dn")
            ctx = auditor.AuditContext(prec)
            res = ctx.omega_log_moment(args.n)
            value = res.value if args.n % 2 == 0 else -res.value
            lines.append(f"d_{args.n} = {value.decimal(digits)}")
            lines.append(f"error_estimate = {res.error_estimate.decimal(6)}")
            lines.append(f"evaluations = {res.evaluations}")
    except ValueError as exc:
        parser.error(str(exc))
    return _write_output("\n".join(lines) + "\n", args.output)


# ----------------------------------------------------------- verify/report

def _case_json(rep, digits: int) -> dict:
    def dec(v):
        return None if v is None else v.decimal(digits)

    return {
        "id": rep.case_id,
        "family": rep.family,
        "lhs": dec(rep.lhs_value),
        "rhs": dec(rep.rhs_value),
        "abs_residual": dec(rep.abs_residual),
        "verdict": rep.verdict,
        "anchor": rep.paper_anchor,
    }


CASE_COLUMNS = ("id", "family", "lhs", "rhs", "abs_residual", "verdict", "anchor")


def _cases_csv(reports, digits: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CASE_COLUMNS)
    for rep in reports:
        row = _case_json(rep, digits)
        writer.writerow(["" if row[k] is None else row[k] for k in CASE_COLUMNS])
    return buf.getvalue()


def _cases_text(reports, digits: int) -> str:
    lines = []
    counts: dict[str, int] = {}
    for rep in reports:
        counts[rep.verdict] = counts.get(rep.verdict, 0) + 1
        resid = "-" if rep.abs_residual is None else rep.abs_residual.decimal(3)
        note = f"  # {rep.note}" if rep.note else ""
        lines.append(f"{rep.case_id:<26} {rep.family:<14} {rep.verdict:<15} "
                     f"residual={resid:<12} tol={rep.tolerance:g} "
                     f"{rep.paper_anchor}{note}")
    summary = ", ".join(f"{counts[k]} {k}" for k in sorted(counts))
    lines.append(f"# {len(reports)} cases: {summary}")
    return "\n".join(lines) + "\n"


def _run_cases(cfg: RunConfig, parser, ctx=None):
    try:
        reports = auditor.run_registry(prec=cfg.precision_bits, ids=cfg.case_ids,
                                       family=cfg.family, jobs=cfg.jobs,
                                       tol_override=cfg.tolerance, ctx=ctx)
    except KeyError as exc:
        parser.error(str(exc.args[0]) if exc.args else "unknown case id")
    if not reports:
        parser.error("case filter matched nothing")
    return reports


def cmd_verify(args, parser) -> int:
    cfg = _config_from_args(args, parser)
    reports = _run_cases(cfg, parser)
    digits = decimal_digits_for(cfg.precision_bits)
    if cfg.fmt == "json":
        text = json.dumps([_case_json(r, digits) for r in reports], indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _cases_csv(reports, digits)
    else:
        text = _cases_text(reports, digits)
    status = _write_output(text, cfg.output)
    return status if status != EXIT_OK else exit_code_for(reports)


def build_report_document(cfg: RunConfig, parser=None):
    """Assemble the full document: metadata, headline constants, case table."""
    prec = cfg.precision_bits
    ctx = auditor.AuditContext(prec)
    if parser is None:
        reports = auditor.run_registry(prec=prec, ids=cfg.case_ids,
                                       family=cfg.family, jobs=cfg.jobs,
                                       tol_override=cfg.tolerance, ctx=ctx)
    else:
        reports = _run_cases(cfg, parser, ctx=ctx)
    digits = decimal_digits_for(prec)
    dn = auditor.compute_dn_table(4, prec, ctx=ctx)
    doc = {
        "meta": {
            "precision": prec,
            "versions": {
                "stieltjes_audit": __version__,
                "python": platform.python_version(),
                "gmpy2": gmpy2.version(),
            },
        },
        "constants": {
            "gamma": zeta.euler_gamma(prec).decimal(digits),
            "gamma_n": [zeta.stieltjes_laurent(k, prec).decimal(digits)
                        for k in range(4)],
            "eta_n": [e.decimal(digits) for e in hasse.eta_sequence(4, prec)],
            "dn": [dn.d(k).decimal(digits) for k in range(5)],
        },
        "cases": [_case_json(r, digits) for r in reports],
    }
    return doc, reports


def cmd_report(args, parser) -> int:
    cfg = _config_from_args(args, parser)
    doc, reports = build_report_document(cfg, parser)
    digits = decimal_digits_for(cfg.precision_bits)
    if cfg.fmt == "json":
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _cases_csv(reports, digits)
    else:
        lines = [f"precision = {doc['meta']['precision']} bits",
                 f"gamma = {doc['constants']['gamma']}"]
        for k, g in enumerate(doc["constants"]["gamma_n"]):
            lines.append(f"gamma_{k} = {g}")
        for k, e in enumerate(doc["constants"]["eta_n"]):
            lines.append(f"eta_{k} = {e}")
        for k, d in enumerate(doc["constants"]["dn"]):
            lines.append(f"d_{k} = {d}")
        text = "\n".join(lines) + "\n" + _cases_text(reports, digits)
    status = _write_output(text, cfg.output)
    return status if status != EXIT_OK else exit_code_for(reports)


# -------------------------------------------------------------------- list

def cmd_list(args, parser) -> int:
    family = FAMILY_BY_FLAG[args.family] if args.family else None
    wanted = set(args.ids) if args.ids else None
    cases = [c for c in auditor.registry()
             if (family is None or c.family == family)
             and (wanted is None or c.id in wanted)]
    if wanted:
        missing = wanted - {c.id for c in cases}
        if missing:
            parser.error(f"unknown case id: {', '.join(sorted(missing))}")
    if not cases:
        parser.error("case filter matched nothing")
    if args.fmt == "json":
        rows = [{"id": c.id, "family": c.family, "kind": c.kind,
                 "tolerance": c.tolerance, "anchor": c.paper_anchor,
                 "description": c.description} for c in cases]
        text = json.dumps(rows, indent=2) + "\n"
    elif args.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "family", "kind", "tolerance", "anchor",
                         "description"])
        for c in cases:
            writer.writerow([c.id, c.family, c.kind, c.tolerance,
                             c.paper_anchor, c.description])
        text = buf.getvalue()
    else:
        lines = [f"{c.id:<26} {c.family:<14} {c.kind:<9} {c.paper_anchor:<14} "
                 f"{c.description}" for c in cases]
        lines.append(f"# {len(cases)} cases")
        text = "\n".join(lines) + "\n"
    return _write_output(text, args.output)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())
