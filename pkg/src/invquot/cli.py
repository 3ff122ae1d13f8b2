"""Command-line front end.

Exit codes: 0 success, 1 invariant violation or example mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .arith import NumericError
from .branch import InvariantViolation
from .classify import classify
from .covers import verify_cover_examples
from .enriques import enriques_filter, enriques_possible
from .profile import REFERENCE_KS2, allowed_k, quotient_profile
from .rules import Provenance, RuleError, all_rules, load_rules

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(doc: dict, fmt: str, text, markdown) -> str:
    if fmt == "json":
        return report.dump_json(doc)
    if fmt == "paper":
        return markdown(doc)
    return text(doc)


def _extra_rules(args) -> list:
    if not getattr(args, "rules_file", None):
        return []
    try:
        return load_rules(args.rules_file)
    except (OSError, RuleError) as exc:
        raise UsageError(f"cannot load rules file: {exc}") from None


def cmd_classify(args) -> tuple[str, int]:
    try:
        cl = classify(args.k2, args.k, args.kw2, extra_rules=_extra_rules(args))
        if args.kw2 is not None and not any(s.cells for s in cl.sections):
            raise UsageError(f"K_W^2 = {args.kw2} is not admissible for the selected cells")
    except NumericError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = report.classification_dict(cl, trace=args.trace)
    return _emit(doc, args.format, report.classification_text, report.classification_markdown), EXIT_OK


def enriques_report(ks2: int, trace: bool = False) -> dict:
    verdicts = [enriques_possible(quotient_profile(ks2, k)) for k in allowed_k(ks2)]
    candidates = []
    if ks2 == REFERENCE_KS2:
        for v in verdicts:
            if not v.possible:
                continue
            profile = quotient_profile(ks2, v.k)
            for kw2 in profile.kw2_values():
                admitted = classify(ks2, v.k, kw2).section(v.k).cell(kw2).admitted
                candidates += enriques_filter(admitted)
    return report.enriques_dict(ks2, verdicts, candidates, trace=True if trace else False)


def cmd_enriques(args) -> tuple[str, int]:
    try:
        doc = enriques_report(args.k2, trace=args.trace or args.format == "json")
    except NumericError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return report.dump_json(doc), EXIT_OK
    if args.format == "paper":
        return report.enriques_markdown(doc), EXIT_OK
    return report.enriques_text(doc, trace=args.trace), EXIT_OK


def cmd_examples(args, data=None) -> tuple[str, int]:
    results = verify_cover_examples() if data is None else verify_cover_examples(data)
    doc = report.examples_dict(results)
    out = _emit(doc, args.format, report.examples_text, report.examples_markdown)
    return out, EXIT_OK if doc["ok"] else EXIT_VIOLATION


def cmd_rules(args) -> tuple[str, int]:
    try:
        rules = all_rules(_extra_rules(args))
    except RuleError as exc:
        raise UsageError(str(exc)) from None
    if args.provenance:
        rules = [r for r in rules if r.provenance is Provenance(args.provenance)]
    if args.id:
        rules = [r for r in rules if r.id == args.id]
        if not rules:
            raise UsageError(f"unknown rule id {args.id!r}")
    doc = report.rules_dict(rules)
    return _emit(doc, args.format, report.rules_text, report.rules_text), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invquot",
                                     description="Classify involution quotients of surfaces with p_g = q = 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k2=True):
        if k2:
            p.add_argument("--k2", type=int, required=True, help="K_S^2 in [1, 9]")
        p.add_argument("--format", choices=("text", "json", "paper"), default="text",
                       help="plain table, JSON, or a markdown table (paper)")

    p = sub.add_parser("classify", help="quotient profiles and branch divisor tables")
    common(p)
    p.add_argument("--k", type=int, help="restrict to one number of isolated fixed points")
    p.add_argument("--kw2", type=int, help="restrict to one value of K_W^2")
    p.add_argument("--trace", action="store_true", help="show the budget and index computations")
    p.add_argument("--rules-file", help="extra exclusion rules (see rules module for the grammar)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enriques", help="Enriques-quotient filter")
    common(p)
    p.add_argument("--trace", action="store_true", help="per-configuration case attribution")
    p.set_defaults(func=cmd_enriques)

    p = sub.add_parser("examples", help="check the bidouble-cover involutions")
    common(p, k2=False)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("rules", help="list exclusion rules with provenance")
    common(p, k2=False)
    p.add_argument("--provenance", choices=[v.value for v in Provenance])
    p.add_argument("--id", help="show a single rule")
    p.add_argument("--rules-file", help="include rules from a file")
    p.set_defaults(func=cmd_rules)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        out, code = args.func(args)
    except UsageError as exc:
        print(f"invquot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"invquot: invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
