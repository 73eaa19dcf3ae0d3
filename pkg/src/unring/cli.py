"""``unring`` command line.

Exit codes: 0 success (a collapse to the zero ring included), 2 syntax error,
3 semantic or flag error, 4 collapse under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .core import Element, Integers, Naturals
from .eqsolve import LinearEquation, SolveTrace, solve
from .errors import ParseError, UnringError
from .expr import RINGS, EvalError, display, evaluate, format_report
from .quantity import parse_quantity, solve_rate_with_trace
from .ratiogeom import OrientedRatio, Ratio, monodromy

EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_SEMANTIC = 3
EXIT_STRICT = 4

COMMANDS = ("eval", "solve", "monodromy", "quantity")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # flag errors are semantic errors here, not argparse's default exit 2
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="unring", description="Exact arithmetic with logged context widening.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate an expression (default command)")
    ev.add_argument("expression", help="expression text, or '-' to read stdin")
    ev.add_argument("--ring", default="rat", help=f"one of {', '.join(RINGS)} (default rat)")
    ev.add_argument("--param", action="append", default=[], metavar="NAME=EXPR",
                    help="bind an identifier, e.g. --param a=2")
    ev.add_argument("--json", action="store_true")
    ev.add_argument("--strict", action="store_true", help="exit 4 if the number system collapses")

    so = sub.add_parser("solve", help="solve a*[] + b = c with a step trace")
    so.add_argument("a", type=int)
    so.add_argument("b", type=int)
    so.add_argument("c", type=int)
    so.add_argument("--ring", choices=("nat", "int"), default="int")
    so.add_argument("--json", action="store_true")

    mo = sub.add_parser("monodromy", help="sign picked up around a loop of p:q ratios")
    mo.add_argument("tokens", nargs="*", help="p:q entries, or '-' to read stdin")
    mo.add_argument("--oriented", action="store_true")

    qu = sub.add_parser("quantity", help="evaluate a quantity such as '50 lb / 9 person'")
    qu.add_argument("expression", help="quantity text, or '-' to read stdin")
    qu.add_argument("--per", metavar="COUNT", help="solve EXPR = rate * COUNT for the rate")
    qu.add_argument("--json", action="store_true")
    return parser


_VALUE_FLAGS = {"--ring", "--param", "--per"}
_SWITCHES = {"--json", "--strict", "--oriented", "-h", "--help"}


def _normalize_argv(argv: list[str]) -> list[str]:
    """Insert the default command and shield positionals that start with '-'."""
    if not argv or argv[0] not in COMMANDS + ("-h", "--help"):
        argv = ["eval", *argv]
    if argv[0] not in COMMANDS:
        return argv
    command, rest = argv[0], argv[1:]
    options, positionals = [], []
    i = 0
    while i < len(rest):
        tok = rest[i]
        flag = tok.split("=", 1)[0]
        if tok == "--":
            positionals += rest[i + 1:]
            break
        if flag in _VALUE_FLAGS:
            options.append(tok)
            if "=" not in tok and i + 1 < len(rest):
                options.append(rest[i + 1])
                i += 1
        elif tok in _SWITCHES or (tok.startswith("-") and tok != "-" and tok[1:2].isalpha() and tok != "-dt"
                                  and not tok.startswith("-x")):
            options.append(tok)
        else:
            positionals.append(tok)
        i += 1
    return [command, *options, "--", *positionals]


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _use_color(stream) -> bool:
    mode = os.environ.get("UNRING_COLOR", "auto")
    if mode not in ("auto", "never"):
        raise EvalError(f"UNRING_COLOR must be 'auto' or 'never', got {mode!r}")
    return mode == "auto" and hasattr(stream, "isatty") and stream.isatty()


def _syntax_error(err: ParseError, text: str, out) -> int:
    out.write(f"error: {err}\n")
    col = len(text.encode()[: err.offset].decode(errors="ignore"))
    out.write(f"  {text}\n  {' ' * col}^\n")
    return EXIT_SYNTAX


def _cmd_eval(args, stdout, stderr) -> int:
    text = _read(args.expression)
    params = {}
    for binding in args.param:
        name, sep, value = binding.partition("=")
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise EvalError(f"--param expects NAME=EXPR, got {binding!r}")
        params[name] = value
    color = _use_color(stdout)
    try:
        report = evaluate(text, args.ring, params)
    except ParseError as err:
        return _syntax_error(err, text, stderr)
    if args.strict and report.collapsed:
        stderr.write("error: number system collapsed (--strict)\n")
        return EXIT_STRICT
    stdout.write(format_report(report, as_json=args.json, color=color and not args.json))
    return EXIT_OK


def _trace_rows(eq: LinearEquation, value, trace: SolveTrace) -> list[list[str]]:
    rows = [["equation", "", str(eq), trace.start_ctx.name, ""]]
    for step in trace.steps:
        result = step.result
        shown = f"□ = {display(result)}" if isinstance(result, Element) else str(result)
        note = ""
        if step.conservative:
            note = f"(via {step.widened_to.name}; value already in {step.resulting_ctx.name})"
        rows.append([step.op, str(step.operand), shown, step.resulting_ctx.name, note])
    return rows


def _cmd_solve(args, stdout, stderr) -> int:
    ctx = Naturals() if args.ring == "nat" else Integers()
    if args.ring == "nat" and min(args.a, args.b, args.c) < 0:
        raise EvalError("--ring nat takes non-negative coefficients")
    eq = LinearEquation.over(ctx, args.a, args.b, args.c)
    value, trace = solve(eq)
    if args.json:
        stdout.write(json.dumps(trace.as_dict(value), ensure_ascii=False) + "\n")
        return EXIT_OK
    rows = _trace_rows(eq, value, trace)
    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    for r in rows:
        line = "  ".join(cell.ljust(w) for cell, w in zip(r, widths))
        stdout.write((line + "  " + r[4]).rstrip() + "\n")
    stdout.write(f"value: {display(value)} in {trace.final_ctx.name}\n")
    if trace.collapsed:
        stdout.write("warning: number system collapsed\n")
    return EXIT_OK


_RATIO = re.compile(r"^(-?\d+(?:/\d+)?):(-?\d+(?:/\d+)?)$")


def _cmd_monodromy(args, stdout, stderr) -> int:
    tokens = args.tokens
    if tokens in ([], ["-"]):
        tokens = sys.stdin.read().split()
    cls = OrientedRatio if args.oriented else Ratio
    loop = []
    for tok in tokens:
        m = _RATIO.match(tok)
        if m is None:
            raise EvalError(f"expected p:q, got {tok!r}")
        try:
            loop.append(cls(Fraction(m.group(1)), Fraction(m.group(2))))
        except (ValueError, ZeroDivisionError) as err:
            raise EvalError(f"{tok}: {err}") from None
    sign = monodromy(loop)
    stdout.write(("+1" if sign > 0 else "-1") + "\n")
    return EXIT_OK


def _cmd_quantity(args, stdout, stderr) -> int:
    text = _read(args.expression)
    try:
        total = parse_quantity(text)
        count = parse_quantity(args.per) if args.per is not None else None
    except ParseError as err:
        return _syntax_error(err, text if args.per is None else args.per, stderr)
    log = []
    if count is None:
        result = total
    else:
        result, trace = solve_rate_with_trace(total, count)
        ctxs = [c.name for c in trace.contexts]
        log = [f"{a} → {b}" for a, b in zip(ctxs, ctxs[1:]) if a != b]
    if args.json:
        payload = {"value": str(result), "scalar": str(result.scalar),
                   "unit": result.unit.as_dict(), "context_log": log}
        stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        stdout.write(str(result) + "\n")
        for step in log:
            stdout.write(f"  context: {step}\n")
    return EXIT_OK


_HANDLERS = {
    "eval": _cmd_eval,
    "solve": _cmd_solve,
    "monodromy": _cmd_monodromy,
    "quantity": _cmd_quantity,
}


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
        return _HANDLERS[args.command](args, stdout, stderr)
    except _UsageError as err:
        stderr.write(f"{err}\n")
        return EXIT_SEMANTIC
    except ParseError as err:
        stderr.write(f"error: {err}\n")
        return EXIT_SYNTAX
    except (EvalError, UnringError, ValueError, ArithmeticError) as err:
        stderr.write(f"error: {err}\n")
        return EXIT_SEMANTIC


def entry() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(main())


if __name__ == "__main__":
    entry()
