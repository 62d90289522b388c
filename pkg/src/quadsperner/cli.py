"""Command line interface.

Documents travel as JSON on stdin/stdout (or ``--input``).  Exit codes:
0 pass, 2 failed check or invalid input, 3 undecided cells present,
4 malformed JSON.
"""
from __future__ import annotations

import argparse
import json
import sys

from .central import DEFAULT_DEPTH, enumerate_central_cells
from .complex import ComplexError, CubicalComplex, build_pile, carve
from .degree import DegreeError, boundary_degree, boundary_degree_mod2
from .fixtures import FIXTURES
from .labelling import Labelling, LabellingError, random_sperner, validate_nl, validate_sperner
from .preimages import NonGenericValue
from .render import render_svg
from .theorems import (FAIL, PASS, UNKNOWN, cell_record, check_all, check_sperner_theorems,
                       check_theorem1, check_theorem2)

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_BAD_JSON = 0, 2, 3, 4
STATUS_CODES = {PASS: EXIT_OK, FAIL: EXIT_FAIL, UNKNOWN: EXIT_UNKNOWN}


class BadJSON(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_doc(args) -> dict:
    try:
        if args.input:
            with open(args.input) as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadJSON(f"malformed JSON input: {exc}") from None
    if not isinstance(doc, dict):
        raise BadJSON("input must be a JSON object")
    return doc


def _read_labelling(args) -> Labelling:
    doc = _read_doc(args)
    try:
        return Labelling.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise BadJSON(f"labelling document is missing or mistypes a field: {exc}") from None


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_pile(args) -> int:
    comp = build_pile(args.dims)
    if args.carve:
        comp = carve(comp, args.carve, drop_orphans=True)
    _emit(comp.to_dict())
    return EXIT_OK


def cmd_label(args) -> int:
    doc = _read_doc(args)
    try:
        comp = CubicalComplex.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise BadJSON(f"complex document is missing or mistypes a field: {exc}") from None
    if args.sperner_random is not None:
        labelling = random_sperner(comp, args.sperner_random)
    elif args.colors is not None:
        labelling = Labelling.from_colors(comp, args.colors)
    else:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadJSON(f"malformed JSON in {args.file}: {exc}") from None
        if isinstance(data, list):
            data = {"labels": data}
        if "colors" in data:
            labelling = Labelling.from_colors(comp, data["colors"])
        else:
            labelling = Labelling(comp, tuple(data["labels"]))
    _emit(labelling.to_dict())
    return EXIT_OK


def cmd_check(args) -> int:
    labelling = _read_labelling(args)
    comp = labelling.complex
    if args.nl:
        res = validate_nl(comp, labelling)
        _emit({"check": "nl", "status": PASS if res.ok else FAIL, "violations": res.violations})
        return EXIT_OK if res.ok else EXIT_FAIL
    if args.sperner:
        report = check_sperner_theorems(comp, labelling, depth=args.depth, threads=args.threads)
    elif args.theorem1:
        report = check_theorem1(comp, labelling, depth=args.depth, threads=args.threads)
    elif args.theorem2:
        report = check_theorem2(comp, labelling, depth=args.depth, threads=args.threads)
    else:
        doc = check_all(comp, labelling, depth=args.depth, threads=args.threads)
        if comp.pile is not None:
            sp = validate_sperner(comp, labelling)
            doc["sperner"] = sp.ok
        _emit(doc)
        return STATUS_CODES[doc["status"]]
    _emit(report.to_dict())
    return STATUS_CODES[report.status]


def cmd_degree(args) -> int:
    labelling = _read_labelling(args)
    comp = labelling.complex
    if args.mod2:
        _emit(boundary_degree_mod2(comp, labelling, attempt_offset=args.seed).to_dict())
        return EXIT_OK
    if args.method == "both":
        walk = boundary_degree(comp, labelling, "walk")
        pre = boundary_degree(comp, labelling, "preimage", attempt_offset=args.seed)
        agree = walk.total == pre.total
        _emit({"walk": walk.to_dict(), "preimage": pre.to_dict(), "agree": agree,
               "summary": f"{walk.total}/{pre.total} {'agreement' if agree else 'disagreement'}"})
        return EXIT_OK if agree else EXIT_FAIL
    _emit(boundary_degree(comp, labelling, args.method, attempt_offset=args.seed).to_dict())
    return EXIT_OK


def cmd_central(args) -> int:
    labelling = _read_labelling(args)
    comp = labelling.complex
    scan = enumerate_central_cells(comp, labelling, depth=args.depth, dims=args.dims, threads=args.threads)
    _emit({
        "central_cells": [cell_record(comp, labelling, c, cert) for c, cert in scan.yes],
        "unknown_cells": [cell_record(comp, labelling, c, cert) for c, cert in scan.unknown],
    })
    return EXIT_UNKNOWN if scan.unknown else EXIT_OK


def cmd_render(args) -> int:
    labelling = _read_labelling(args)
    scan = enumerate_central_cells(labelling.complex, labelling, depth=args.depth, threads=args.threads)
    text = render_svg(labelling, scan)
    with open(args.out, "w") as fh:
        fh.write(text)
    _emit({"out": args.out, "central_cells": len(scan.yes)})
    return EXIT_OK


def cmd_fixtures(args) -> int:
    _emit(FIXTURES[args.name]().to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="read the JSON document from this file instead of stdin")
    common.add_argument("--seed", type=int, default=0, help="seed / regular-value attempt offset")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="bisection depth for undecided cells")
    common.add_argument("--threads", type=int, default=1, help="worker processes for cell scans")

    parser = argparse.ArgumentParser(prog="quadsperner", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pile", parents=[common], help="emit the pile of cubes with the given extents")
    p.add_argument("dims", type=_ints, help="extents, e.g. 4,3")
    p.add_argument("--carve", type=_ints, default=None, help="top-cell indices to remove")
    p.set_defaults(func=cmd_pile)

    p = sub.add_parser("label", parents=[common], help="attach a labelling to a complex")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sperner-random", type=int, metavar="SEED")
    group.add_argument("--file", metavar="PATH")
    group.add_argument("--colors", type=_ints, metavar="CSV")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("check", parents=[common], help="run validations and theorem checks")
    group = p.add_mutually_exclusive_group()
    for flag in ("--sperner", "--nl", "--theorem1", "--theorem2", "--all"):
        group.add_argument(flag, action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("degree", parents=[common], help="boundary degree of the labelling")
    p.add_argument("--mod2", action="store_true")
    p.add_argument("--method", choices=("auto", "walk", "preimage", "both"), default="auto")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("central", parents=[common], help="list centrally labelled cells")
    p.add_argument("--dims", type=_ints, default=None, help="cell dimensions to scan, e.g. 1,2")
    p.set_defaults(func=cmd_central)

    p = sub.add_parser("render", parents=[common], help="draw a planar instance as SVG")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fixtures", parents=[common], help="emit a built-in instance")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BadJSON as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_JSON
    except (ComplexError, LabellingError, DegreeError, NonGenericValue) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
