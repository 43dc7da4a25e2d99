"""Command-line entry point.

Exit codes: 0 success or acceptance, 1 usage or parse error, 2 domain
rejection (failed validation, rejected certificate, malformed curve).
"""
from __future__ import annotations

import argparse
import json
import sys

from .curves import (
    NormalCurve,
    NotANormalCurve,
    classify_curve,
    enumerate_curves,
    format_word,
    hemispheres,
    parse_word,
)
from .diskcomplex import Status, build_disk_complex, certify_almost_normal
from .errors import ParseError
from .sequences import WidthSequence, plateaus, size
from .surface import (
    components,
    edge_weights,
    euler_characteristic,
    load_surface,
    total_weight,
    validate,
    width,
)
from .triangulation import TriangulationError, load_triangulation

EXIT_OK, EXIT_USAGE, EXIT_REJECTED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, text: str, data) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _load(args):
    T = load_triangulation(args.triangulation)
    S = load_surface(args.surface, T.tet_count)
    return T, S


def _curve(text: str) -> NormalCurve:
    try:
        word = parse_word(text)
    except NotANormalCurve as exc:
        raise ParseError(str(exc)) from None
    return NormalCurve.from_word(word)


def cmd_validate(args) -> int:
    T, S = _load(args)
    report = validate(T, S)
    lines = ["ok" if report.ok else "invalid"]
    lines += [f"{type(p).__name__}: {p}" for p in report.problems]
    _emit(args, "\n".join(lines), report.to_json())
    return EXIT_OK if report.ok else EXIT_REJECTED


def cmd_euler(args) -> int:
    T, S = _load(args)
    chi = euler_characteristic(T, S)
    parts = [euler_characteristic(T, c) for c in components(T, S)]
    _emit(args, str(chi), {"euler_characteristic": chi, "components": parts})
    return EXIT_OK


def cmd_width(args) -> int:
    T, S = _load(args)
    w = width(T, S)
    data = {
        "width": [list(p) for p in w.terms],
        "total_weight": total_weight(T, S),
        "edge_weights": edge_weights(T, S),
    }
    _emit(args, str(w), data)
    return EXIT_OK


def _curve_record(c: NormalCurve) -> dict:
    cls = classify_curve(c)
    return {
        "word": str(c),
        "length": c.length,
        "class": cls.kind,
        "vertex": cls.vertex,
        "edge_pair": cls.edge_pair,
        "k": cls.k,
        "hemispheres": [
            {"vertices": list(h.vertices), "vertex_count": h.vertex_count, "parallel_subedges": h.parallel_count}
            for h in hemispheres(c)
        ],
    }


def cmd_classify_curve(args) -> int:
    c = _curve(args.word)
    _emit(args, str(classify_curve(c)), _curve_record(c))
    return EXIT_OK


def cmd_enumerate_curves(args) -> int:
    curves = enumerate_curves(args.max_length, method=args.method)
    if args.stats:
        lines = [f"{format_word(c.word)}\t{classify_curve(c)}" for c in curves]
        data = [_curve_record(c) for c in curves]
    else:
        lines = [format_word(c.word) for c in curves]
        data = lines
    _emit(args, "\n".join(lines), {"curves": data})
    return EXIT_OK


def cmd_disk_complex(args) -> int:
    g = build_disk_complex(_curve(args.word))
    _emit(args, g.to_text(), g.to_json())
    return EXIT_OK


def cmd_certify(args) -> int:
    T, S = _load(args)
    cert = certify_almost_normal(T, S)
    _emit(args, str(cert), cert.to_json())
    return EXIT_REJECTED if cert.status is Status.REJECTED else EXIT_OK


def cmd_plateaus(args) -> int:
    if args.file in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    try:
        ws = WidthSequence.parse(text)
    except ValueError as exc:
        raise ParseError(f"bad width line ({exc})") from None
    ranges = plateaus(ws)
    sz = size(ws)
    lines = [f"plateau {i}..{j} width {ws.terms[i]}" for i, j in ranges]
    lines.append("size " + " ".join(str(w) for w in sz.widths) if sz.widths else "size empty")
    data = {"plateaus": [list(r) for r in ranges], "size": [[list(p) for p in w.terms] for w in sz.widths]}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    parser = _Parser(prog="almostnormal", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (
        ("validate", cmd_validate, "check matching equations and the quad condition"),
        ("euler", cmd_euler, "Euler characteristic of a surface"),
        ("width", cmd_width, "width of a surface"),
        ("certify", cmd_certify, "certify a surface as normal or almost normal"),
    ):
        p = add(name, func, help_)
        p.add_argument("triangulation")
        p.add_argument("surface")
    add("classify-curve", cmd_classify_curve, "classify a normal curve word").add_argument("word")
    add("disk-complex", cmd_disk_complex, "disk complex of a disk bounded by a curve").add_argument("word")
    p = add("enumerate-curves", cmd_enumerate_curves, "list connected normal curves")
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--method", choices=("packing", "words"), default="packing")
    add("plateaus", cmd_plateaus, "plateaus and size of a width sequence").add_argument("file", nargs="?")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "enumerate-curves" and args.max_length < 3:
            parser.error("--max-length must be at least 3")
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TriangulationError as exc:
        print(f"error: invalid triangulation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotANormalCurve, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
