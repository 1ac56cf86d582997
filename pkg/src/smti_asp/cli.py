"""Command-line front end.

Exit codes: 0 success (or a stable matching for ``check``), 1 unstable
matching, 2 usage, syntax or validation error, 3 a size bound was hit.

``--machine`` switches every subcommand to one JSON document on stdout.
Matchings are then lists of ``[a, b]`` pairs (singles as ``[x, x]``), 3D
matchings lists of ``[a, b, c]`` triples, and answer sets lists of
literal strings.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import asp, encode, gs, oracle, threedim
from .errors import BoundExceededError, ParseError, SmtiError
from .instances import format_instance, generate_instance, generate_instance_3d, parse_instance
from .model import Criterion, CriterionKind, Matching, PersonRef, SmtiInstance, block_report
from .threedim import Matching3, Smti3dInstance

EXIT_OK, EXIT_UNSTABLE, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(SmtiError):
    pass


def parse_matching(text: str, instance: SmtiInstance) -> Matching:
    """``m1-w3,m2-w1`` into a matching of ``instance``; everyone else is single."""
    couples = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        parts = item.split("-")
        try:
            a, b = (PersonRef.parse(x) for x in parts)
        except ValueError:
            raise UsageError(f"bad pair {item!r}, expected e.g. m1-w3") from None
        if (a.side.value, b.side.value) != ("m", "w"):
            raise UsageError(f"bad pair {item!r}, expected a man then a woman")
        couples.append((a.index, b.index))
    return Matching.from_couples(instance.n, instance.p, couples)


def _pairs_json(matching: Matching) -> list:
    return [[str(a), str(b)] for a, b in matching.sorted_pairs()]


def _triples_json(matching: Matching3) -> list:
    out = [[f"m{i}", f"w{j}", f"c{k}"] for i, j, k in sorted(matching.triples)]
    return out + [[str(x)] * 3 for x in sorted(matching.singles)]


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_instance(_read(path))


def _load_2d(path: str) -> SmtiInstance:
    instance = _load(path)
    if not isinstance(instance, SmtiInstance):
        raise UsageError(f"{path} is a 3D instance; this command needs an smti file")
    return instance


class _Out:
    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self, document) -> None:
        if self.machine:
            sys.stdout.write(json.dumps(document, sort_keys=True) + "\n")
        else:
            sys.stdout.write("".join(f"{x}\n" for x in self.lines))


def cmd_check(args, out: _Out) -> int:
    instance = _load_2d(args.file)
    report = block_report(instance, parse_matching(args.matching, instance))
    out.line("stable" if report.stable else "unstable")
    for i, j in sorted(report.blocking_pairs):
        out.line(f"blocking pair (m{i},w{j})")
    for x in sorted(report.blocking_individuals):
        out.line(f"blocking individual {x}")
    for i, j in sorted(report.unacceptable_pairings):
        out.line(f"unacceptable pair (m{i},w{j})")
    out.emit({
        "stable": report.stable,
        "blocking_pairs": [[f"m{i}", f"w{j}"] for i, j in sorted(report.blocking_pairs)],
        "blocking_individuals": [str(x) for x in sorted(report.blocking_individuals)],
        "unacceptable_pairs": [[f"m{i}", f"w{j}"] for i, j in sorted(report.unacceptable_pairings)],
    })
    return EXIT_OK if report.stable else EXIT_UNSTABLE


def cmd_enumerate(args, out: _Out) -> int:
    instance = _load(args.file)
    if isinstance(instance, Smti3dInstance):
        found = threedim.enumerate_stable_3d(instance, args.bound or threedim.DEFAULT_BOUND_3D)
        document = {"matchings": [_triples_json(m) for m in found]}
    else:
        found = oracle.enumerate_stable(instance, args.bound or oracle.DEFAULT_BOUND)
        document = {"matchings": [_pairs_json(m) for m in found]}
    for matching in found:
        out.line(str(matching))
    out.emit(document)
    return EXIT_OK


def _tie_break(text: str):
    if text == "lex":
        return None
    if text.startswith("seed:"):
        try:
            return int(text[5:])
        except ValueError:
            pass
    raise UsageError(f"bad --tie-break {text!r}, expected lex or seed:<N>")


def cmd_gs(args, out: _Out) -> int:
    instance = _load_2d(args.file)
    matching = gs.solve_gs(instance, _tie_break(args.tie_break), args.side)
    out.line(str(matching))
    out.emit({"matching": _pairs_json(matching)})
    return EXIT_OK


def cmd_optimize(args, out: _Out) -> int:
    instance = _load_2d(args.file)
    criterion = Criterion.parse(args.criterion, args.direction)
    value, winners = oracle.optimize(instance, criterion, args.bound or oracle.DEFAULT_BOUND)
    out.line("no stable matching" if value is None else f"value {value}")
    for matching in winners:
        out.line(str(matching))
    out.emit({"criterion": str(criterion), "value": value, "matchings": [_pairs_json(m) for m in winners]})
    return EXIT_OK


def cmd_encode(args, out: _Out) -> int:
    instance = _load(args.file)
    program = args.program
    if program == "3d":
        if not isinstance(instance, Smti3dInstance):
            raise UsageError("--program 3d needs an smti3 file")
        text = encode.emit_dlv(encode.encode_smti_3d(instance))
    else:
        if not isinstance(instance, SmtiInstance):
            raise UsageError(f"--program {program} needs an smti file")
        if program == "normal":
            text = encode.emit_dlv(encode.encode_smti(instance))
        elif program == "disjunctive":
            text = encode.emit_dlv(encode.encode_smti_disjunctive(instance))
        elif program == "completion":
            text = encode.emit_dlv(encode.encode_completion(instance))
        elif program.startswith("opt:"):
            try:
                criterion = Criterion.parse(program[4:], args.direction)
            except ValueError:
                raise UsageError(f"unknown criterion {program[4:]!r}") from None
            text = encode.emit_opt_program(instance, criterion, args.prime)
        else:
            raise UsageError(f"unknown --program {program!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        out.line(f"wrote {args.out}")
        out.emit({"path": args.out, "rules": sum(1 for x in text.splitlines() if x and not x.startswith("%"))})
    elif out.machine:
        out.emit({"program": text})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_answer_sets(args, out: _Out) -> int:
    program = asp.parse_program(_read(args.program_file))
    max_atoms = None if args.max_atoms == 0 else args.max_atoms
    found = asp.enumerate_answer_sets(program, max_atoms)
    predicates = [x for x in (args.filter or "").split(",") if x]
    if predicates:
        found = [asp.project(a, *predicates) for a in found]
    rendered = [[str(x) for x in sorted(a, key=lambda x: (x.predicate, x.args, x.negated))] for a in found]
    out.line(f"{len(found)} answer set{'s' if len(found) != 1 else ''}")
    for literals in rendered:
        out.line("{" + ", ".join(literals) + "}")
    out.emit({"answer_sets": rendered})
    return EXIT_OK


def cmd_gen(args, out: _Out) -> int:
    if args.children is None:
        instance = generate_instance(args.men, args.women, args.ties, args.incomplete, args.seed)
    else:
        instance = generate_instance_3d(args.men, args.women, args.children, args.ties, args.incomplete, args.seed)
    text = format_instance(instance)
    if out.machine:
        out.emit({"instance": text})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smti-asp", description="Stable marriage with ties and incomplete lists.")
    parser.add_argument("--machine", action="store_true", help="print one JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a matching for weak stability")
    p.add_argument("file")
    p.add_argument("matching", help='couples like "m1-w3,m2-w1"; everyone else is single')
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("enumerate", help="list all weakly stable matchings")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=None, help="maximum number of persons")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("gs", help="one stable matching by deferred acceptance")
    p.add_argument("file")
    p.add_argument("--tie-break", default="lex", help="lex or seed:<N>")
    p.add_argument("--side", choices=["men", "women"], default="men", help="proposing side")
    p.set_defaults(run=cmd_gs)

    kinds = [k.value for k in CriterionKind]
    p = sub.add_parser("optimize", help="optimal stable matchings for a criterion")
    p.add_argument("file")
    p.add_argument("--criterion", required=True, choices=kinds)
    p.add_argument("--direction", choices=["min", "max"], default="min")
    p.add_argument("--bound", type=int, default=None, help="maximum number of persons")
    p.set_defaults(run=cmd_optimize)

    p = sub.add_parser("encode", help="emit an answer-set program in DLV syntax")
    p.add_argument("file")
    p.add_argument("--program", required=True, help="normal, disjunctive, completion, 3d or opt:<criterion>")
    p.add_argument("--direction", choices=["min", "max"], default="min", help="for opt:<criterion>")
    p.add_argument("--prime", default="'", help="suffix of the primed predicates in opt programs")
    p.add_argument("--out", default=None)
    p.set_defaults(run=cmd_encode)

    p = sub.add_parser("answer-sets", help="answer sets of a ground program file")
    p.add_argument("program_file")
    p.add_argument("--max-atoms", type=int, default=26, help="literal bound, 0 for none")
    p.add_argument("--filter", default=None, help="comma-separated predicates to keep")
    p.set_defaults(run=cmd_answer_sets)

    p = sub.add_parser("gen", help="random instance file")
    p.add_argument("--men", type=int, required=True)
    p.add_argument("--women", type=int, required=True)
    p.add_argument("--children", type=int, default=None, help="makes a 3D instance")
    p.add_argument("--ties", type=float, required=True)
    p.add_argument("--incomplete", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = _Out(args.machine)
    try:
        return args.run(args, out)
    except BoundExceededError as exc:
        print(f"smti-asp: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (SmtiError, ParseError, ValueError) as exc:
        print(f"smti-asp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"smti-asp: {exc}", file=sys.stderr)
        return EXIT_USAGE
