"""Command-line front end.

    orbicert analyze FILE [--euler] [--witness PATH] [--json PATH] ...
    orbicert order FILE WORD
    orbicert euler FILE

Exit codes: 0 success, 1 hypothesis refuted or an identity violated,
2 inconclusive (no closed table and nothing certified), 3 bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Iterator, Sequence

from .certify import InvalidWitness, Kind, Status, apply_theorems, parse_witness, verify_orders
from .coset_enum import DEFAULT_MAX_COSETS, EnumerationLimits, NonTermination, element_order, enumerate_cosets
from .orbicomplex import DEFAULT_MAX_CELLS, ComplexTooLarge, OrderMismatch, euler_identity_check
from .presentation import PresentationError, parse_presentation, parse_word
from .report import Report, coset_stats_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class _InputError(Exception):
    pass


@contextmanager
def _timed(timings: dict[str, float], stage: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        timings[stage] = (time.perf_counter() - start) * 1000.0


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    text = _read(path)
    try:
        return text, parse_presentation(text)
    except PresentationError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _fmt(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _limits(args) -> EnumerationLimits:
    return EnumerationLimits(args.max_cosets, args.strategy)


def run_analyze(args, out=None) -> int:
    out = out or sys.stdout
    timings: dict[str, float] = {}
    notes = []
    with _timed(timings, "parse_ms"):
        text, p = _load(args.file)
        witness = None
        if args.witness:
            try:
                witness = parse_witness(_read(args.witness), p)
            except InvalidWitness as exc:
                raise _InputError(f"{args.witness}: {exc}") from None

    table = stats = None
    if not args.no_enum:
        with _timed(timings, "enumerate_ms"):
            try:
                table, stats = enumerate_cosets(p, _limits(args))
            except NonTermination as exc:
                stats = exc.stats
                notes.append(f"coset enumeration inconclusive: {exc}")

    with _timed(timings, "verify_ms"):
        verdicts = verify_orders(p, table, witness)
    with _timed(timings, "certify_ms"):
        cert = apply_theorems(p, verdicts, table.size if table else None)

    euler = None
    if args.euler:
        if table is None:
            notes.append("Euler check skipped: it needs a closed coset table")
        else:
            with _timed(timings, "euler_ms"):
                try:
                    euler = euler_identity_check(p, table, args.max_cells)
                except OrderMismatch as exc:
                    notes.append(f"Euler check skipped: {exc}")
                except ComplexTooLarge as exc:
                    notes.append(f"Euler check skipped: {exc}")
            cert = replace(cert, euler=euler)

    report = Report(
        input={
            "file": args.file,
            "text": text,
            "presentation": str(p),
            "witness": args.witness,
            "flags": {
                "max_cosets": args.max_cosets,
                "strategy": args.strategy,
                "euler": args.euler,
                "no_enum": args.no_enum,
                "max_cells": args.max_cells,
            },
        },
        certificate=cert,
        coset_stats=coset_stats_json(
            stats, table, None if args.no_enum else args.strategy, args.max_cosets
        ),
        euler=euler,
        timings=timings,
        notes=notes,
    )
    _print_report(report, out)
    if args.json:
        Path(args.json).write_text(report.dumps(args.deterministic), encoding="utf-8")
    return analyze_exit_code(report)


def analyze_exit_code(report: Report) -> int:
    cert = report.certificate
    refuted = any(v.status is Status.REFUTED for v in cert.order_verdicts)
    euler_failed = report.euler is not None and not (
        report.euler.identity_holds and report.euler.b1_vanishes and report.euler.b2_matches
    )
    if refuted or Kind.VIOLATION in cert.kinds or euler_failed:
        return EXIT_VIOLATION
    if Kind.HYPOTHESIS_UNVERIFIED in cert.kinds:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _print_report(report: Report, out) -> None:
    cert = report.certificate
    p = cert.presentation
    print(f"presentation: {p}", file=out)
    print(f"d = {cert.d}, r = {cert.r}, sum 1/m_i = {_fmt(cert.sum_inv_m)}", file=out)
    print(f"chi_orb = {_fmt(cert.chi_orb)} (approx. {float(cert.chi_orb):.6f})", file=out)
    stats = report.coset_stats
    if stats["strategy"] is None:
        print("coset enumeration: skipped", file=out)
    else:
        state = "closed" if stats["closed"] else "not closed"
        print(
            f"coset enumeration ({stats['strategy']}): {state}, "
            f"{stats['cosets_defined']} cosets defined, {stats['max_live']} max live",
            file=out,
        )
    print(f"group order: {cert.group_size if cert.group_size else 'unknown'}", file=out)
    for v in cert.order_verdicts:
        base = p.format_word(p.relators[v.relator].base)
        how = f" via {v.method.value}" if v.method else ""
        actual = f" (actual order {v.actual})" if v.status is Status.REFUTED else ""
        print(f"  relator {v.relator}: order({base}) = {v.claimed}? {v.status.value}{how}{actual}", file=out)
    print("conclusions:", file=out)
    for c in cert.conclusions:
        value = ""
        if c.value is not None:
            value = f"({_fmt(c.value) if hasattr(c.value, 'denominator') else c.value})"
        print(f"  {c.kind.value}{value}", file=out)
    if cert.infinite_abelianization:
        print("cross-check (not a theorem conclusion): abelianization is infinite", file=out)
    if report.euler:
        _print_euler(report.euler, out)
    for note in report.notes:
        print(f"note: {note}", file=out)


def _print_euler(e, out) -> None:
    b0, b1, b2 = e.betti
    n = e.group_order
    print(f"betti numbers of the orbihedral cover: b0 = {b0}, b1 = {b1}, b2 = {b2}", file=out)
    print(
        f"(b0 - b1 + b2)/|G| = {b0 - b1 + b2}/{n} = {_fmt(e.lhs)}; chi_orb = {_fmt(e.chi_orb)}; "
        f"{'holds' if e.identity_holds else 'FAILS'}",
        file=out,
    )
    print(
        f"predicted b2 = |G| * chi_orb - 1 = {e.b2_predicted}; "
        f"{'matches' if e.b2_matches else 'MISMATCH'}",
        file=out,
    )


def run_order(args, out=None) -> int:
    out = out or sys.stdout
    _, p = _load(args.file)
    try:
        w = parse_word(args.word, p)
    except PresentationError as exc:
        raise _InputError(f"word {args.word!r}: {exc}") from None
    try:
        table, _ = enumerate_cosets(p, _limits(args))
    except NonTermination as exc:
        print(f"inconclusive: {exc}", file=out)
        return EXIT_INCONCLUSIVE
    print(element_order(table, w), file=out)
    return EXIT_OK


def run_euler(args, out=None) -> int:
    out = out or sys.stdout
    _, p = _load(args.file)
    try:
        table, _ = enumerate_cosets(p, _limits(args))
    except NonTermination as exc:
        print(f"inconclusive: {exc}", file=out)
        return EXIT_INCONCLUSIVE
    try:
        e = euler_identity_check(p, table, args.max_cells)
    except OrderMismatch as exc:
        print(f"order hypothesis fails: {exc}", file=out)
        return EXIT_VIOLATION
    except ComplexTooLarge as exc:
        print(f"inconclusive: {exc}", file=out)
        return EXIT_INCONCLUSIVE
    print(f"presentation: {p}", file=out)
    print(f"|G| = {e.group_order}", file=out)
    _print_euler(e, out)
    ok = e.identity_holds and e.b1_vanishes and e.b2_matches
    return EXIT_OK if ok else EXIT_VIOLATION


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which here means "inconclusive"
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbicert", description="Exact certificates for presentations with orbifold exponents.")
    common = _Parser(add_help=False)
    common.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS, metavar="N",
                        help="give up enumeration after N cosets (default %(default)s)")
    common.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt",
                        help="coset enumeration strategy (default %(default)s)")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS, metavar="N",
                        help="largest cover to build, in cells (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="certify a presentation")
    a.add_argument("file", help="presentation file")
    a.add_argument("--euler", action="store_true", help="verify the Euler identity on the cover")
    a.add_argument("--json", metavar="PATH", help="write the JSON report here")
    a.add_argument("--witness", metavar="PATH", help="permutation quotient certifying relator orders")
    a.add_argument("--no-enum", action="store_true", help="skip coset enumeration")
    a.add_argument("--deterministic", action="store_true", help="zero the timings in the JSON report")
    a.set_defaults(run=run_analyze)

    o = sub.add_parser("order", parents=[common], help="order of a word in the group")
    o.add_argument("file", help="presentation file")
    o.add_argument("word", help="word in the generators, e.g. x*y^-1")
    o.set_defaults(run=run_order)

    e = sub.add_parser("euler", parents=[common], help="Betti numbers and Euler identity")
    e.add_argument("file", help="presentation file")
    e.set_defaults(run=run_euler)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_cosets < 1:
        print("error: --max-cosets must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.run(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
