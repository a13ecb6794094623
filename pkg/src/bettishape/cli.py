"""Command line interface: ``bettishape <command> <ideal> ...``.

Exit status 0 means a result (or verdict) was produced, 1 an input error,
2 an inconclusive run (a cap was hit).  Diagnostics never go to stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass

from . import asymptotics as asy
from .betti import BettiTable, betti_table, power_betti_table, regularity
from .experiments import SCHEMA, run_batch
from .monomial_ideals import (
    PowerCapExceeded,
    SearchInconclusive,
    find_linear_quotients_power,
    has_linear_quotients,
    lambda_invariant,
)
from .parsing import IdealExpression, IdealSyntaxError, parse_ideal, serialize_ideal
from .polynomial import format_monomial
from .render import render_betti

CAP_ENV = "BETTISHAPE_CAP"

OK, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2


@dataclass
class CommandResult:
    status: int
    output: str
    diagnostics: str = ""


class _Inconclusive(Exception):
    pass


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return asy.DEFAULT_STABILIZATION_CAP
    try:
        value = int(raw)
    except ValueError:
        raise _ArgumentError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise _ArgumentError(f"{CAP_ENV} must be positive")
    return value


def _read_ideal(text: str) -> IdealExpression:
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    return parse_ideal(text.strip())


def _ideal_of(expr: IdealExpression):
    return expr.monomial if expr.is_monomial else expr.ideal


def _document(kind: str, expr: IdealExpression, engine: str, **fields) -> str:
    doc = {"schema": SCHEMA, "command": kind, "ideal": serialize_ideal(expr.ideal), "engine": engine}
    doc.update(fields)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _table_json(B: BettiTable) -> dict:
    return {
        "n": B.n,
        "entries": [[i, j, v] for (i, j), v in sorted(B.entries.items())],
        "totals": list(B.totals),
        "regularity": regularity(B) if B else None,
        "degree_cap": B.degree_cap,
    }


def _engine_label(fam: asy.PowerFamily) -> str:
    if fam.monomial:
        return "upper-koszul"
    return "prime-field-heuristic" if fam.heuristic else "koszul"


def _stabilization(expr, cap, prime):
    try:
        return asy.stabilization_index(_ideal_of(expr), cap, prime)
    except asy.StabilizationUnknown as exc:
        raise _Inconclusive(str(exc)) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_betti(args, expr, diag):
    I = _ideal_of(expr)
    if args.cap is None and args.engine == "auto":
        fam = asy.family(I, args.prime)
        B = fam.table(args.power)
    else:
        engine = args.engine
        if args.prime is not None:
            engine = "koszul" if engine == "auto" else engine
            I = expr.ideal.times_monomials(args.power)
            B = betti_table(I, args.cap, engine=engine, prime=args.prime)
        else:
            B = power_betti_table(I, args.power, args.cap, engine=engine)
    if args.json:
        return _document("betti", expr, B.engine, power=args.power, table=_table_json(B))
    return render_betti(B)


def cmd_cwl(args, expr, diag):
    fam = asy.family(_ideal_of(expr), args.prime)
    verdict = fam.cwl(0)
    if args.json:
        return _document("cwl", expr, _engine_label(fam), componentwise_linear=verdict,
                         generator_degrees=fam.generator_degrees(0))
    return f"componentwise linear: {'yes' if verdict else 'no'}\n"


def cmd_c_index(args, expr, diag):
    cap = args.cap if args.cap is not None else default_cap()
    fam = asy.family(_ideal_of(expr), args.prime)
    c = _stabilization(expr, cap, args.prime)
    if args.json:
        return _document("c-index", expr, _engine_label(fam), c_I=c, cap=cap)
    return f"c_I = {c}\n"


def cmd_strands(args, expr, diag):
    fam = asy.family(_ideal_of(expr), args.prime)
    rep = asy.strand_report(fam.ideal, args.power, args.prime)
    if args.json:
        return _document("strands", expr, _engine_label(fam), power=args.power,
                         strands=list(rep.strands),
                         full={str(k): v for k, v in rep.fullness.items()},
                         all_full=rep.all_full, generator_degrees=list(rep.generator_degrees))
    lines = [f"k = {args.power}: nonzero strands {', '.join(map(str, rep.strands))}"]
    for ell in rep.strands:
        lines.append(f"  strand {ell}: {'full' if rep.fullness[ell] else 'not full'}")
    lines.append(f"generator degrees of m^{args.power} I: {', '.join(map(str, rep.generator_degrees))}")
    return "\n".join(lines) + "\n"


def cmd_pattern(args, expr, diag):
    if args.to < args.from_:
        raise _ArgumentError("--to must be at least --from")
    fam = asy.family(_ideal_of(expr), args.prime)
    rows = []
    for k in range(args.from_, args.to + 1):
        row = {"k": k, "strands": list(fam.table(k).strands)}
        if k < args.to:
            row["shift_to_next"] = asy.pattern_shift_check(fam.ideal, k, args.prime)
            row["same_shape_as_next"] = asy.same_shape_check(fam.ideal, k, args.prime)
        rows.append(row)
    if args.json:
        return _document("pattern", expr, _engine_label(fam), powers=rows)
    lines = []
    for row in rows:
        line = f"k = {row['k']}: strands {', '.join(map(str, row['strands']))}"
        if "shift_to_next" in row:
            line += f"; shifts to k+1: {'yes' if row['shift_to_next'] else 'no'}"
            line += f"; same shape: {'yes' if row['same_shape_as_next'] else 'no'}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_linquot(args, expr, diag):
    if not expr.is_monomial:
        raise _ArgumentError("linquot needs a monomial ideal")
    I = expr.monomial
    names = expr.names
    fmt = lambda seq: "[" + ", ".join(format_monomial(u, names) for u in seq) + "]"  # noqa: E731
    if args.construct:
        try:
            res = find_linear_quotients_power(I, args.max_power)
        except PowerCapExceeded as exc:
            raise _Inconclusive(str(exc)) from None
        profile = lambda_invariant(res.ideal, res.order)
        if args.json:
            return _document("linquot", expr, "exact", t=res.t, lambda_trajectory=list(res.lambda_trajectory),
                             orders=[[format_monomial(u, names) for u in O] for O in res.orders],
                             admissible=profile.admissible)
        lines = [f"t = {res.t}", f"lambda trajectory: {' -> '.join(map(str, res.lambda_trajectory))}"]
        for step, (O, lam) in enumerate(zip(res.orders, res.lambda_trajectory)):
            lines.append(f"O_{step} (max lambda {lam}): {fmt(O)}")
        lines.append(f"admissible order on G(m^{res.t} I): {fmt(res.order)}")
        return "\n".join(lines) + "\n"
    try:
        order = has_linear_quotients(I)
    except SearchInconclusive as exc:
        raise _Inconclusive(str(exc)) from None
    if args.json:
        return _document("linquot", expr, "exact", linear_quotients=order is not None,
                         order=None if order is None else [format_monomial(u, names) for u in order])
    if order is None:
        return "linear quotients: no\n"
    return f"linear quotients: yes\nadmissible order: {fmt(order)}\n"


def cmd_conjecture(args, expr, diag):
    cap = args.cap if args.cap is not None else default_cap()
    _stabilization(expr, cap, args.prime)
    report = asy.conjecture_check(_ideal_of(expr), cap, args.prime)
    if args.json:
        fam = asy.family(_ideal_of(expr), args.prime)
        return _document("conjecture", expr, _engine_label(fam), report=report.as_dict(),
                         summary=report.summary())
    lines = [report.summary()]
    lines += [f"  reg(m^{k} I) = {v}" for k, v in sorted(report.regularities.items())]
    for ce in report.counterexamples:
        lines.append("counterexample: " + json.dumps(ce.as_dict(), sort_keys=True))
    return "\n".join(lines) + "\n"


def cmd_batch(args, diag):
    if args.n < 1 or args.max_deg < 1 or args.count < 0 or args.workers < 1:
        raise _ArgumentError("--n, --max-deg, --workers must be positive and --count nonnegative")
    cap = args.cap if args.cap is not None else default_cap()
    bad = run_batch(args.n, args.max_deg, args.count, args.seed, args.out, workers=args.workers,
                    cap=cap, graded=args.graded, timings=args.timings)
    if bad:
        diag.append(f"{bad} of {args.count} records inconclusive")
    return f"wrote {args.count} records to {args.out}\n"


COMMANDS = {
    "betti": cmd_betti,
    "cwl": cmd_cwl,
    "c-index": cmd_c_index,
    "strands": cmd_strands,
    "pattern": cmd_pattern,
    "linquot": cmd_linquot,
    "conjecture": cmd_conjecture,
}


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a schema-versioned JSON document")
    common.add_argument("--prime", type=int, default=None,
                        help="compute over GF(p) instead of Q (heuristic, labelled as such)")
    parser = _Parser(prog="bettishape", description="Betti tables of m^k I and their eventual shape.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", parents=[common], help="Betti diagram of m^k I")
    p.add_argument("ideal")
    p.add_argument("--power", type=_nonneg, default=0)
    p.add_argument("--cap", type=int, default=None, help="largest internal degree to compute")
    p.add_argument("--engine", choices=["auto", "koszul", "upper-koszul", "ideal"], default="auto")

    p = sub.add_parser("cwl", parents=[common], help="is I componentwise linear")
    p.add_argument("ideal")

    for name, helptext in (("c-index", "stabilization index c_I"),
                           ("conjecture", "regularity conjecture check")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("ideal")
        p.add_argument("--cap", type=int, default=None, help=f"largest k to try (env {CAP_ENV})")

    p = sub.add_parser("strands", parents=[common], help="nonzero strands of m^k I")
    p.add_argument("ideal")
    p.add_argument("--power", type=_nonneg, required=True)

    p = sub.add_parser("pattern", parents=[common], help="strand pattern across powers")
    p.add_argument("ideal")
    p.add_argument("--from", dest="from_", type=_nonneg, required=True)
    p.add_argument("--to", type=_nonneg, required=True)

    p = sub.add_parser("linquot", parents=[common], help="linear quotients of a monomial ideal")
    p.add_argument("ideal")
    p.add_argument("--construct", action="store_true",
                   help="iterate the order construction until an admissible order appears")
    p.add_argument("--max-power", type=int, default=50)

    p = sub.add_parser("batch", help="random experiments, appended as JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--graded", action="store_true", help="non-monomial generators (sums of two monomials)")
    p.add_argument("--timings", action="store_true", help="record wall-clock timings (breaks bit-exactness)")
    return parser


def run_command(argv: list[str]) -> CommandResult:
    diag: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "batch":
                out = cmd_batch(args, diag)
            else:
                expr = _read_ideal(args.ideal)
                if args.prime is not None and not expr.is_monomial:
                    diag.append(f"warning: computing over GF({args.prime}); results are heuristic")
                out = COMMANDS[args.command](args, expr, diag)
        diag.extend(f"warning: {w.message}" for w in caught)
        status = OK
    except (_ArgumentError, IdealSyntaxError, OSError, ValueError) as exc:
        out, status = "", INPUT_ERROR
        diag.append(f"error: {exc}")
    except (_Inconclusive, asy.TruncationError, asy.StabilizationUnknown) as exc:
        out, status = "", INCONCLUSIVE
        diag.append(f"inconclusive: {exc}")
    text = "\n".join(diag) + "\n" if diag else ""
    return CommandResult(status, out, text)


def main(argv: list[str] | None = None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.output)
    sys.stderr.write(result.diagnostics)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
