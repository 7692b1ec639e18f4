"""``popstack`` command line.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import automata
from .automata import StateBudgetExceeded, build_sorting_plan_dfa, minimize, trim
from .forbidden import enumerate_bounded_forbidden, forbidden_patterns, SegmentPattern
from .gfalg import growth_rate, plan_gf, series
from .oracle import CapExceeded, count_sortable_bruteforce
from .plans import format_encoding

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1
SEGMENT_CAP = 2_000_000


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    k = int(text)
    if not 1 <= k <= 6:
        raise argparse.ArgumentTypeError("k must be between 1 and 6")
    return k


def _length(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("n must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popstack",
        description="Count permutations sortable by k passes through a pop-stack.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log pipeline progress")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=False, n_default=None):
        p.add_argument("-k", type=_order, required=True, help="number of passes (1..6)")
        if need_n or n_default is not None:
            p.add_argument("-n", type=_length, required=need_n, default=n_default)
        p.add_argument("--format", choices=["text", "dot", "json"], default="text")
        p.add_argument("--json", action="store_const", const="json", dest="format")
        p.add_argument("--workers", type=int, default=1, help="processes for the group automata")
        return p

    common(sub.add_parser("gf", help="print the generating function P_k(x)"))
    common(sub.add_parser("series", help="print p_0..p_n"), need_n=True)
    p = common(sub.add_parser("dfa", help="print the sorting-plan automaton"))
    p.add_argument("--stage", default="final", help="W, R<i>, base or final")
    p.add_argument("--complete", action="store_true", help="keep the dead state (complete DFA)")
    p = common(sub.add_parser("segments", help="list bounded forbidden segments"))
    p.add_argument("--patterns", action="store_true", help="print wildcard patterns instead")
    common(sub.add_parser("oracle", help="brute-force count of sortable permutations of [n]"), need_n=True)
    common(sub.add_parser("verify", help="run the consistency checks"), n_default=6)
    return parser


def _dfa(args) -> automata.Dfa:
    return build_sorting_plan_dfa(args.k, workers=args.workers, strategy="tree" if args.workers > 1 else "fold")


def cmd_gf(args, out) -> int:
    f = plan_gf(_dfa(args))
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "k": args.k,
            "num": list(f.num.coeffs),
            "den": list(f.den.coeffs),
            "num_degree": f.num.degree,
            "den_degree": f.den.degree,
            "degree": max(f.num.degree, f.den.degree),
            "growth_rate": growth_rate(f),
        }
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(f.to_text() + "\n")
    return EXIT_OK


def cmd_series(args, out) -> int:
    coeffs = series(plan_gf(_dfa(args)), args.n)
    if args.format == "json":
        out.write(json.dumps({"schema": SCHEMA, "k": args.k, "series": coeffs}) + "\n")
    else:
        out.write("".join(f"{c}\n" for c in coeffs))
    return EXIT_OK


def cmd_dfa(args, out) -> int:
    stage = args.stage
    k = args.k
    if stage == "final":
        d = _dfa(args)
    elif stage == "W":
        d = minimize(automata.build_W(k))
    elif stage == "base":
        d = automata.base_dfa(k)
    elif stage.startswith("R") and stage[1:].isdigit():
        i = int(stage[1:])
        if not 2 <= i <= k:
            raise UsageError(f"stage {stage}: row must be in 2..{k}")
        d = minimize(automata.build_R(k, i))
    else:
        raise UsageError(f"unknown stage {stage!r}; use W, R<i>, base or final")
    shown = d if args.complete else trim(d)
    if args.format == "dot":
        out.write(automata.to_dot(shown, name=f"{stage}_k{k}"))
    elif args.format == "json":
        text = automata.to_text(shown, k)
        out.write(json.dumps({
            "schema": SCHEMA, "k": k, "stage": stage, "complete": args.complete,
            "states": shown.num_states, "transitions": shown.num_transitions,
            "dfa": text,
        }) + "\n")
    else:
        out.write(automata.to_text(shown, k))
    return EXIT_OK


def cmd_segments(args, out) -> int:
    k = args.k
    if k < 2:
        return EXIT_OK
    if args.patterns:
        pats = forbidden_patterns(k)
        lines = [str(p) for p in pats]
    else:
        pats = forbidden_patterns(k, minimal=False)
        total = sum(1 << p.wildcards() for p in pats)
        if total > SEGMENT_CAP:
            raise CapExceeded(
                f"listing segments for k={k} would expand about {total} candidates "
                f"(cap {SEGMENT_CAP}); use --patterns"
            )
        lines = [format_encoding(s.symbols) for s in enumerate_bounded_forbidden(k)]
    if args.format == "json":
        out.write(json.dumps({"schema": SCHEMA, "k": k, "patterns": args.patterns, "items": lines}) + "\n")
    else:
        out.write("".join(f"{ln}\n" for ln in lines))
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    count = count_sortable_bruteforce(args.k, args.n)
    if args.format == "json":
        out.write(json.dumps({"schema": SCHEMA, "k": args.k, "n": args.n, "count": count}) + "\n")
    else:
        out.write(f"{count}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import run_checks

    log = logging.getLogger("popstack.verify")
    checks = run_checks(args.k, args.n, _dfa(args), progress=log.info)
    failed = [c for c in checks if c.ok is False]
    if args.format == "json":
        out.write(json.dumps({
            "schema": SCHEMA, "k": args.k, "n": args.n, "ok": not failed,
            "checks": [
                {"name": c.name, "ok": c.ok, "expected": str(c.expected) if c.expected is not None else None,
                 "actual": str(c.actual) if c.actual is not None else None, "note": c.note}
                for c in checks
            ],
        }) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        out.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed or skipped\n")
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {
    "gf": cmd_gf,
    "series": cmd_series,
    "dfa": cmd_dfa,
    "segments": cmd_segments,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s: %(message)s",
    )
    if args.format == "dot" and args.command != "dfa":
        print("popstack: --format dot is only available for dfa", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"popstack: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, StateBudgetExceeded) as exc:
        print(f"popstack: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
