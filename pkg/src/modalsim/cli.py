"""Command line front end.

Subcommands:

- ``check``      decide a behavioural preorder between two system files
- ``translate``  move a system between the modal and classified views
- ``mc``         evaluate a formula at a state of a system
- ``charform``   print the characteristic formula of a process term
- ``selfcheck``  run the built-in property suite

Exit codes follow the usual convention: 0 when the query holds (related,
formula true, all checks pass), 1 when it does not, 2 on errors such as
unreadable files, parse failures or ill-formed queries.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Union

from .charform import characteristic_formula, encode_term
from .formulas import BLLogic, CCLogic, formula_text, mc_cc, mc_mts
from .preorders import (
    CCSim,
    PartialBisim,
    PreorderKind,
    Refinement,
    Simulation,
    distinguishing_formula,
    greatest_ccsim,
    greatest_pbsim,
    greatest_refinement,
    greatest_simulation,
)
from .selfcheck import SelfCheckConfig, property_ids, run_selfcheck
from .systems import Action, PointedLTS, PointedMTS, sorted_actions
from .terms import term_labels, term_text
from .textio import (
    ParseError,
    parse_formula,
    parse_label,
    parse_system,
    parse_term,
    print_system,
)
from .translate import (
    NotInEncodingRange,
    TranslationReport,
    embedding_report,
    encode_formula,
    encoding_report,
    eliminate_bivariant,
    lts_of_mts,
    mts_of_encoded_lts,
    mts_of_lts,
    mts_of_plain_lts,
    strip_decorations,
)

System = Union[PointedMTS, PointedLTS]


class CliError(Exception):
    """A user-facing error that should terminate with exit code 2."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_system(path: str, strict: bool) -> System:
    try:
        return parse_system(_read_text(path), strict=strict)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _parse_bisimset(text: str) -> frozenset[Action]:
    labels = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if chunk:
            labels.append(parse_label(chunk))
    return frozenset(labels)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _system_kind(system: System) -> str:
    return "mts" if isinstance(system, PointedMTS) else "lts"


def _pick_state(system: System, wanted: Optional[str], side: str) -> str:
    state = wanted if wanted is not None else system.init
    if state not in system.states:
        raise CliError(f"{state!r} is not a state of the {side} system")
    return state


def _cmd_check(args: argparse.Namespace) -> int:
    left = _load_system(args.left, args.strict)
    right = _load_system(args.right, args.strict)
    if args.kind == "refine":
        if not (isinstance(left, PointedMTS) and isinstance(right, PointedMTS)):
            raise CliError("refine compares two mts files")
        kind: PreorderKind = Refinement()
        rel = greatest_refinement(left, right)
    else:
        if not (isinstance(left, PointedLTS) and isinstance(right, PointedLTS)):
            raise CliError(f"{args.kind} compares two lts files")
        if args.kind == "ccsim":
            kind = CCSim()
            rel = greatest_ccsim(left, right)
        elif args.kind == "pbsim":
            kind = PartialBisim(_parse_bisimset(args.bisimset))
            rel = greatest_pbsim(left, right, kind.bset)
        else:
            kind = Simulation()
            rel = greatest_simulation(left, right)
    left_state = _pick_state(left, args.left_state, "left")
    right_state = _pick_state(right, args.right_state, "right")
    related = (left_state, right_state) in rel
    witness = None
    if not related and args.kind in ("refine", "ccsim"):
        witness = distinguishing_formula(kind, left, left_state, right, right_state)
    if args.format == "json":
        _emit_json(
            {
                "kind": args.kind,
                "left_state": left_state,
                "right_state": right_state,
                "related": related,
                "relation": sorted([p, q] for p, q in rel.pairs),
                "distinguishing_formula": None if witness is None else formula_text(witness),
            }
        )
    else:
        print("related" if related else "not related")
        if witness is not None:
            print(f"distinguishing formula: {formula_text(witness)}")
    return 0 if related else 1


def _strip_target(system: System, args: argparse.Namespace):
    if args.like is None:
        if isinstance(system, PointedLTS):
            raise CliError("stripping an lts needs --like FILE to supply the target signature")
        return None
    like = _load_system(args.like, args.strict)
    if isinstance(system, PointedLTS):
        if not isinstance(like, PointedLTS):
            raise CliError("--like must name an lts file when the input is an lts")
        return like.signature
    return like.actions if isinstance(like, PointedMTS) else like.signature.actions


def _cmd_translate(args: argparse.Namespace) -> int:
    system = _load_system(args.file, args.strict)
    report: Optional[TranslationReport] = None
    try:
        if args.op == "m":
            if not isinstance(system, PointedLTS):
                raise CliError("m embeds an lts file")
            result: System = mts_of_lts(system)
            report = embedding_report(system)
        elif args.op == "c":
            if not isinstance(system, PointedMTS):
                raise CliError("c encodes an mts file")
            result = lts_of_mts(system)
            report = encoding_report(system)
        elif args.op == "n":
            if not isinstance(system, PointedLTS):
                raise CliError("n reads an lts file")
            result = mts_of_plain_lts(system, _parse_bisimset(args.bisimset))
        elif args.op == "cinv":
            if not isinstance(system, PointedLTS):
                raise CliError("cinv decodes an lts file")
            result = mts_of_encoded_lts(system)
        elif args.op == "rho":
            result = strip_decorations(system, _strip_target(system, args))
        else:  # debi
            if not isinstance(system, PointedLTS):
                raise CliError("debi rewrites an lts file")
            result = eliminate_bivariant(system)
    except (NotInEncodingRange, ValueError) as exc:
        raise CliError(str(exc)) from exc
    text = print_system(result)
    if args.format == "json":
        payload: dict = {"op": args.op, "kind": _system_kind(result), "text": text}
        if report is not None:
            payload["report"] = {
                "source_kind": report.source_kind,
                "result_kind": report.result_kind,
                "added_state": report.added_state,
                "label_map": [list(pair) for pair in report.label_map],
            }
        _emit_json(payload)
    else:
        print(text, end="")
    return 0


def _cmd_mc(args: argparse.Namespace) -> int:
    system = _load_system(args.file, args.strict)
    if args.state not in system.states:
        raise CliError(f"{args.state!r} is not a state of the system")
    logic = (
        BLLogic(system.actions)
        if isinstance(system, PointedMTS)
        else CCLogic(system.signature)
    )
    try:
        phi = parse_formula(args.formula, logic)
    except ParseError as exc:
        raise CliError(f"formula: {exc}") from exc
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if isinstance(system, PointedMTS):
        holds = mc_mts(system, args.state, phi)
    else:
        holds = mc_cc(system, args.state, phi)
    if args.format == "json":
        _emit_json(
            {
                "state": args.state,
                "formula": formula_text(phi),
                "holds": holds,
            }
        )
    else:
        print("true" if holds else "false")
    return 0 if holds else 1


def _cmd_charform(args: argparse.Namespace) -> int:
    try:
        term = parse_term(args.term, "mts")
    except ParseError as exc:
        raise CliError(f"term: {exc}") from exc
    ambient = set(term_labels(term))
    for chunk in args.actions.split(","):
        chunk = chunk.strip()
        if chunk:
            ambient.add(parse_label(chunk))
    result = characteristic_formula(term, frozenset(ambient))
    lines = [
        ("term", term_text(result.term)),
        ("actions", " ".join(str(a) for a in sorted_actions(result.actions))),
        ("formula", formula_text(result.formula)),
        ("simplified", formula_text(result.simplified)),
    ]
    if args.cc:
        lines.append(("encoded term", term_text(encode_term(result.term))))
        lines.append(("encoded formula", formula_text(encode_formula(result.formula))))
    if args.format == "json":
        _emit_json({key.replace(" ", "_"): value for key, value in lines})
    else:
        for key, value in lines:
            print(f"{key}: {value}")
    return 0


def _cmd_selfcheck(args: argparse.Namespace) -> int:
    if args.list:
        for pid in property_ids():
            print(pid)
        return 0
    config = SelfCheckConfig(
        seed=args.seed,
        cases=args.cases,
        max_states=args.max_states,
        max_labels=args.max_labels,
        max_formula_depth=args.max_depth,
        term_height=args.term_height,
        properties=tuple(args.properties),
    )
    try:
        report = run_selfcheck(config)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "json":
        print(report.to_json(), end="")
    else:
        color = sys.stdout.isatty() and not os.environ.get("NO_COLOR")
        print(report.to_text(color=bool(color)), end="")
    return 0 if report.ok else 1


def _build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format", choices=["text", "json"], default="text", help="output format"
    )
    strict = argparse.ArgumentParser(add_help=False)
    strict.add_argument(
        "--strict",
        action="store_true",
        help="treat recoverable file problems (like a must without its may twin) as errors",
    )

    parser = argparse.ArgumentParser(
        prog="modalsim",
        description="Modal and classified transition systems: preorders, logic, translations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser(
        "check", parents=[fmt, strict], help="decide a behavioural preorder"
    )
    check.add_argument("kind", choices=["refine", "ccsim", "pbsim", "sim"])
    check.add_argument("left", help="left system file (- for stdin)")
    check.add_argument("right", help="right system file")
    check.add_argument("--left-state", help="start state on the left (default: init)")
    check.add_argument("--right-state", help="start state on the right (default: init)")
    check.add_argument(
        "--bisimset",
        default="",
        help="comma-separated labels that must be matched both ways (pbsim only)",
    )
    check.set_defaults(handler=_cmd_check)

    translate = sub.add_parser(
        "translate", parents=[fmt, strict], help="translate between system kinds"
    )
    translate.add_argument(
        "op",
        choices=["m", "c", "n", "cinv", "rho", "debi"],
        help=(
            "m: embed lts as mts; c: encode mts as lts; n: read a plain lts modally; "
            "cinv: decode an encoded lts; rho: strip label decorations; "
            "debi: eliminate bivariant labels"
        ),
    )
    translate.add_argument("file", help="input system file (- for stdin)")
    translate.add_argument(
        "--bisimset", default="", help="comma-separated must labels for op n"
    )
    translate.add_argument(
        "--like", help="system file supplying the target alphabet or signature for rho"
    )
    translate.set_defaults(handler=_cmd_translate)

    mc = sub.add_parser(
        "mc", parents=[fmt, strict], help="evaluate a formula at a state"
    )
    mc.add_argument("file", help="system file (- for stdin)")
    mc.add_argument("state", help="state to evaluate at")
    mc.add_argument("formula", help="formula text, e.g. '<a>tt & [b]ff'")
    mc.set_defaults(handler=_cmd_mc)

    charform = sub.add_parser(
        "charform", parents=[fmt], help="characteristic formula of a process term"
    )
    charform.add_argument("term", help="process term, e.g. 'a!0 + b.w'")
    charform.add_argument(
        "--actions", default="", help="extra ambient labels, comma separated"
    )
    charform.add_argument(
        "--cc",
        action="store_true",
        help="also print the encoded term and formula for the classified view",
    )
    charform.set_defaults(handler=_cmd_charform)

    selfcheck = sub.add_parser(
        "selfcheck", parents=[fmt], help="run the built-in property suite"
    )
    selfcheck.add_argument("--seed", type=int, default=42)
    selfcheck.add_argument("--cases", type=int, default=60, help="cases per property")
    selfcheck.add_argument("--max-states", type=int, default=4)
    selfcheck.add_argument("--max-labels", type=int, default=2)
    selfcheck.add_argument("--max-depth", type=int, default=4, help="formula depth bound")
    selfcheck.add_argument("--term-height", type=int, default=2)
    selfcheck.add_argument(
        "--property",
        action="append",
        default=[],
        dest="properties",
        metavar="ID",
        help="run only this property (repeatable)",
    )
    selfcheck.add_argument("--list", action="store_true", help="list property ids and exit")
    selfcheck.set_defaults(handler=_cmd_selfcheck)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
