"""Command-line front end: sequence analysis, density tables, verification.

Exit codes: 0 success, 1 verification mismatch, 2 unparseable input,
3 engine invariant failure, 4 verification inconclusive within budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import verify as verify_mod
from .analysis import best_i_for_j
from .constructions import build_yij, parse_spec
from .engine import (
    density,
    distinct_square_sequence,
    enumerate_distinct_squares,
    record_as_dict,
)
from .errors import DomainError, InternalInvariantError, ParseError
from .verify import DEFAULT_SEED, SUITES, table_density
from .words import Word

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_INCONCLUSIVE = 4

_ALIGN_WIDTH = 26


def _default_budget_ms() -> int:
    raw = os.environ.get("SQSCOPE_BUDGET_MS")
    if raw is None:
        return 10_000
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"SQSCOPE_BUDGET_MS must be an integer, got {raw!r}") from None


def _resolve_word(tokens: list[str]) -> Word:
    if tokens[0] == "spec":
        if len(tokens) != 2:
            raise ParseError("expected: seq spec <construction-spec>")
        return parse_spec(tokens[1]).build().word
    if len(tokens) != 1:
        raise ParseError("expected a single word, or: spec <construction-spec>")
    return Word.from_text(tokens[0])


def _render_aligned(word: Word, digits: str, show_positions: bool, out) -> None:
    text = word.to_text()
    for base in range(0, len(text), _ALIGN_WIDTH):
        window = range(base, min(base + _ALIGN_WIDTH, len(text)))
        widths = [len(str(i + 1)) if show_positions else 1 for i in window]
        if show_positions:
            out.write("i  " + " ".join(f"{i + 1:>{w}}" for i, w in zip(window, widths)) + "\n")
        out.write("w  " + " ".join(f"{text[i]:>{w}}" for i, w in zip(window, widths)) + "\n")
        out.write("s  " + " ".join(f"{digits[i]:>{w}}" for i, w in zip(window, widths)) + "\n")
        out.write("\n")


def _cmd_seq(args) -> int:
    word = _resolve_word(args.input)
    sequence = distinct_square_sequence(word, args.engine)
    report = density(word, args.engine)
    out = sys.stdout
    if args.format == "digits":
        out.write(sequence.digits + "\n")
    elif args.format == "json":
        payload = {
            "length": report.length,
            "count": report.distinct_count,
            "density": str(report.density_3dp),
            "sequence": sequence.digits,
            "records": [record_as_dict(r) for r in enumerate_distinct_squares(word, args.engine)],
        }
        out.write(json.dumps(payload) + "\n")
    elif args.format == "csv":
        out.write("position,letter,digit\n")
        text = word.to_text()
        for i, (letter, digit) in enumerate(zip(text, sequence.digits), start=1):
            out.write(f"{i},{letter},{digit}\n")
    else:
        _render_aligned(word, sequence.digits, args.positions, out)
        out.write(
            f"{report.distinct_count} distinct squares, length {report.length}, "
            f"density {table_density(report.density_3dp)}\n"
        )
    return EXIT_OK


def _cmd_table(args) -> int:
    out = sys.stdout
    out.write("i,j,squares,length,density\n")
    if args.preset == "paper":
        pairs = [(i, j) for i, j, *_ in verify_mod.TABLE2_ROWS]
    else:
        pairs = [(best_i_for_j(j), j) for j in args.j]
    for i, j in pairs:
        word = build_yij(i, j).word
        report = density(word, args.engine)
        out.write(
            f"{i},{j},{report.distinct_count},{report.length},"
            f"{table_density(report.density_3dp)}\n"
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    budget = args.budget_ms if args.budget_ms is not None else _default_budget_ms()
    checks = verify_mod.run_suites(
        names,
        m_max=args.m_max,
        k_max=args.k_max,
        engine=args.engine,
        seed=args.seed,
        budget_ms=budget,
    )
    out = sys.stdout
    for check in checks:
        line = f"[{check.status}] {check.suite} {check.name}"
        if check.status != "PASS":
            line += f": expected {check.expected}; computed {check.computed}"
        if check.note:
            line += f" ({check.note})"
        out.write(line + "\n")
    for name in names:
        suite_checks = [c for c in checks if c.suite == name]
        passed = sum(1 for c in suite_checks if c.status == "PASS")
        notes = sum(1 for c in suite_checks if c.note)
        verdict = "PASS" if passed == len(suite_checks) else "FAIL"
        summary = f"suite {name}: {verdict} ({passed}/{len(suite_checks)} checks)"
        if notes:
            summary += f", {notes} claimed-value discrepancy notes"
        out.write(summary + "\n")
    if any(check.status == "FAIL" for check in checks):
        return EXIT_MISMATCH
    if any(check.status == "INCONCLUSIVE" for check in checks):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqscope",
        description="Distinct-square sequences, double-square positions, and "
        "extremal word families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("seq", help="analyze a word or a constructed family member")
    seq.add_argument("input", nargs="+", metavar="WORD | spec SPEC")
    seq.add_argument("--engine", choices=("oracle", "fast"), default="fast")
    seq.add_argument("--format", choices=("aligned", "digits", "json", "csv"), default="aligned")
    seq.add_argument("--positions", action="store_true", help="include a position row (aligned)")
    seq.set_defaults(handler=_cmd_seq)

    table = sub.add_parser("table", help="emit density rows as CSV")
    group = table.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=("paper",), help="the nine reference rows")
    group.add_argument("--j", type=int, nargs="+", help="compute rows for these j, best i")
    table.add_argument("--engine", choices=("oracle", "fast"), default="fast")
    table.set_defaults(handler=_cmd_table)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("suite", choices=SUITES + ("all",))
    ver.add_argument("--m-max", type=int, default=20)
    ver.add_argument("--k-max", type=int, default=12)
    ver.add_argument("--engine", choices=("oracle", "fast"), default="fast")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--budget-ms", type=int, default=None)
    ver.set_defaults(handler=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalInvariantError as exc:
        print(f"engine invariant failure: {exc}", file=sys.stderr)
        return EXIT_ENGINE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
