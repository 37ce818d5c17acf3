"""Command-line surface tying the engine together.

Exit codes: 0 on success, 1 when a checked structure fails to verify
(ideal violation, broken morphism, missing containment), 2 on parse or
usage errors.  ``--format structured`` switches every command to a stable
key/value document starting with the versioned header line ``k0-format 1``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import instances
from .category import (
    CategorySpec,
    FunctorSpec,
    compare_projection,
    functor_induced,
    k0_presentation,
    split_presentation,
    truss_table,
)
from .dsl import (
    SpecSource,
    WordSyntaxError,
    bracket_text,
    parse_bracket_word,
    parse_spec,
    print_spec,
)
from .heaps import reduce_word, word_from_tree
from .lattice import IntMatrix, snf
from .presentation import (
    UnknownGeneratorError,
    normalize_affine,
    retract_group_structure,
    truss_from_table,
    word_equal,
)

FORMAT_HEADER = "k0-format 1"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", 2)


def _load_spec(path: str) -> CategorySpec:
    src = SpecSource(text=_read_file(path), name=path)
    result = parse_spec(src)
    for d in result.diagnostics:
        print(d.render(src.name), file=sys.stderr)
    if result.spec is None:
        raise CliError(f"{path}: parse failed", 2)
    return result.spec


def _parse_word(text: str, what: str):
    try:
        return parse_bracket_word(text)
    except (WordSyntaxError, ValueError) as exc:
        raise CliError(f"{what}: {exc}", 2)


def _emit(args, command: str, lines: list[str]) -> None:
    if args.format == "structured":
        print(FORMAT_HEADER)
        print(f"command {command}")
    for line in lines:
        print(line)


def cmd_present(args) -> int:
    spec = _load_spec(args.file)
    try:
        p = k0_presentation(spec)
    except ValueError as exc:
        raise CliError(str(exc), 2)
    lines = [f"generator {g}" for g in p.generators]
    lines += [f"relation {r}" for r in p.relations]
    _emit(args, "present", lines)
    return 0


def cmd_group(args) -> int:
    spec = _load_spec(args.file)
    try:
        gs = retract_group_structure(k0_presentation(spec), args.base)
    except UnknownGeneratorError as exc:
        raise CliError(str(exc), 2)
    _emit(args, "group", gs.report_lines())
    return 0


def cmd_equal(args) -> int:
    spec = _load_spec(args.file)
    p = k0_presentation(spec)
    trees = [_parse_word(args.word1, "word 1"), _parse_word(args.word2, "word 2")]
    try:
        w1, w2 = (normalize_affine(t) for t in trees)
        verdict = word_equal(p, w1, w2)
    except (UnknownGeneratorError, ValueError) as exc:
        raise CliError(str(exc), 2)
    _emit(args, "equal", [f"word1 {w1}", f"word2 {w2}", f"equal {'true' if verdict else 'false'}"])
    return 0


def cmd_truss_check(args) -> int:
    spec = _load_spec(args.file)
    if spec.products is None:
        raise CliError(f"{args.file}: no product table to check", 2)
    p = k0_presentation(spec)
    check = truss_from_table(p, truss_table(spec))
    lines = [f"ideal {'ok' if check.ok else 'violated'}"]
    if check.violation is not None:
        v = check.violation
        lines.append(f"witness relation {v.relation}")
        lines.append(f"witness side {v.side}")
        lines.append(f"witness generator {v.generator}")
    else:
        lines.append(f"unit {check.unit_law}")
    lines += [f"omitted {a} {b}" for a, b in check.omitted]
    _emit(args, "truss-check", lines)
    return 0 if check.ok else 1


def cmd_project(args) -> int:
    spec = _load_spec(args.file)
    try:
        split = split_presentation(spec)
    except ValueError as exc:
        raise CliError(str(exc), 2)
    full = k0_presentation(spec)
    report = compare_projection(split, full)
    lines = [
        f"containment {'true' if report.contained else 'false'}",
        f"equality {'true' if report.equal else 'false'}",
        f"classification {report.classification}",
    ]
    if report.witness is not None:
        lines.append(f"witness {report.witness}")
    _emit(args, "project", lines)
    return 0 if report.contained else 1


def _parse_map_file(path: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(_read_file(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[1] != "=>":
            raise CliError(f"{path}:{lineno}: expected 'SRC => DST'", 2)
        src, _, dst = parts
        if src in mapping:
            raise CliError(f"{path}:{lineno}: duplicate mapping for {src!r}", 2)
        mapping[src] = dst
    return mapping


def cmd_morphism(args) -> int:
    source = _load_spec(args.source)
    target = _load_spec(args.target)
    mapping = _parse_map_file(args.mapfile)
    try:
        report = functor_induced(FunctorSpec(source=source, target=target, object_map=mapping))
    except ValueError as exc:
        raise CliError(str(exc), 2)
    lines = [f"heap-morphism {'true' if report.heap.ok else 'false'}"]
    if report.heap.witness is not None:
        lines.append(f"witness {report.heap.witness}")
    if report.truss_checked:
        lines.append(f"truss-morphism {'true' if report.truss_ok else 'false'}")
        if report.truss_witness is not None:
            lines.append("truss-witness " + " ".join(str(x) for x in report.truss_witness))
        lines += [f"omitted {a} {b}" for a, b in report.truss_omitted]
    else:
        lines.append("truss-morphism unchecked")
    _emit(args, "morphism", lines)
    ok = report.heap.ok and (not report.truss_checked or report.truss_ok)
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    tree = _parse_word(args.word, "word")
    try:
        reduced = reduce_word(word_from_tree(tree))
    except ValueError as exc:
        raise CliError(str(exc), 2)
    if args.format == "structured":
        _emit(args, "reduce", ["word " + " ".join(reduced.letters)])
    else:
        print(str(reduced))
    return 0


def cmd_snf(args) -> int:
    rows = []
    for lineno, raw in enumerate(sys.stdin.read().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise CliError(f"stdin:{lineno}: matrix entries must be integers", 2)
    if rows and len({len(r) for r in rows}) != 1:
        raise CliError("stdin: ragged matrix rows", 2)
    m = IntMatrix.from_rows(rows)
    factors = snf(m)
    torsion = " ".join(str(d) for d in factors.torsion) if factors.torsion else "none"
    _emit(args, "snf", [f"rank {factors.rank}", f"torsion {torsion}"])
    return 0


def cmd_demo(args) -> int:
    kind = args.kind
    if kind in ("set", "vect", "swindle"):
        if args.arg is None:
            raise CliError(f"demo {kind} needs a bound N", 2)
        try:
            n = int(args.arg)
        except ValueError:
            raise CliError(f"demo {kind}: bound must be an integer, got {args.arg!r}", 2)
        try:
            spec = {
                "set": instances.finite_sets_spec,
                "vect": instances.vect_spec,
                "swindle": instances.swindle_spec,
            }[kind](n)
        except ValueError as exc:
            raise CliError(str(exc), 2)
        sys.stdout.write(print_spec(spec))
        return 0
    if kind == "zmod":
        sys.stdout.write(print_spec(instances.bounded_abelian_groups_file()))
        return 0
    if kind == "cw":
        if args.arg is None:
            raise CliError("demo cw needs a cell-count file", 2)
        try:
            cw = instances.parse_cell_counts(_read_file(args.arg))
        except ValueError as exc:
            raise CliError(f"{args.arg}: {exc}", 2)
        tree = instances.cw_word(cw, args.convention)
        cls = instances.cw_class(cw, args.convention)
        _emit(
            args,
            "demo-cw",
            [f"convention {args.convention}", f"word {bracket_text(tree)}", f"class {cls}"],
        )
        return 0
    raise CliError(f"unknown demo {kind!r}", 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k0heap",
        description="Heap presentations, retract groups and truss checks for finite category specs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "structured"),
        default="human",
        help="structured emits a stable machine-readable key/value document",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common], help="print the heap presentation of a spec")
    p.add_argument("file")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("group", parents=[common], help="rank, torsion and class coordinates")
    p.add_argument("file")
    p.add_argument("--base", required=True, help="basepoint object label")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("equal", parents=[common], help="decide equality of two bracket words")
    p.add_argument("file")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("truss-check", parents=[common], help="validate the product table (ideal property)")
    p.add_argument("file")
    p.set_defaults(func=cmd_truss_check)

    p = sub.add_parser("project", parents=[common], help="compare split and full presentations")
    p.add_argument("file")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("morphism", parents=[common], help="check a functor-induced morphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("mapfile", help="lines of the form 'SRC => DST'")
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("reduce", parents=[common], help="normal form of a free heap word")
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix read from stdin")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("demo", parents=[common], help="built-in instance generators")
    p.add_argument("kind", choices=("set", "vect", "swindle", "cw", "zmod"))
    p.add_argument("arg", nargs="?", help="bound N for set/vect/swindle, cell-count file for cw")
    p.add_argument(
        "--convention",
        choices=instances.CW_CONVENTIONS,
        default="same-index",
        help="sphere index paired with each disk in CW words",
    )
    p.set_defaults(func=cmd_demo)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints usage to stderr already; normalize the exit code
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


def main() -> None:
    sys.exit(run_cli())
