"""Command-line interface.

Exit status is 0 on success, 1 when ``validate`` reports problems, and 2
for usage errors, unreadable input, and malformed files.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import schema
from .construal import E_FORMAT, label_sort_key
from .corpus_io import Mode, read_corpus, write_corpus
from .errors import CorpusMismatch, EmptyTrainingData, FormatError, InvalidExample, UnknownLabel, ValidationError
from .examplebank import HEADER as BANK_HEADER, load_bank
from .metrics import score
from .tagger import leave_one_out, load_model, save_model, tag_corpus, train

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class _Usage(Exception):
    """Raised for bad arguments or input; printed to stderr, exit 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(message)


def _supersense(text):
    name = text[2:] if text.startswith("p.") else text
    try:
        return schema.parse_supersense(name)
    except UnknownLabel:
        raise _Usage(f"unknown supersense: {text!r}") from None


def _read(path, mode=Mode.LENIENT, allow_unlabeled=False):
    try:
        return read_corpus(path, mode, allow_unlabeled)
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _format_error(path, exc: FormatError):
    line = exc.line if exc.line is not None else 0
    return f"{path}:{line} {E_FORMAT} {exc.message}"


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args, out):
    mode = Mode.STRICT if args.strict else Mode.LENIENT
    try:
        _corpus, diagnostics = _read(args.corpus, mode)
    except FormatError as exc:
        out.write(_format_error(args.corpus, exc) + "\n")
        return EXIT_USAGE
    except ValidationError as exc:
        out.write(f"{args.corpus}:{exc.line} {exc.code} {exc.message}\n")
        return EXIT_INVALID
    for d in diagnostics:
        out.write(f"{args.corpus}:{d.line} {d.code} {d.message}\n")
    return EXIT_INVALID if diagnostics else EXIT_OK


def cmd_score(args, out):
    try:
        gold, _ = _read(args.gold)
        pred, _ = _read(args.pred)
        report = score(gold, pred)
    except FormatError as exc:
        raise _Usage(str(exc)) from None
    except CorpusMismatch as exc:
        raise _Usage(str(exc)) from None
    out.write(report.to_machine() if args.format == "machine" else report.to_table())
    return EXIT_OK


def cmd_query(args, out):
    s = _supersense(args.label)
    if args.ancestors:
        out.write(" ".join(a.name for a in schema.ancestors(s)) + "\n")
    elif args.children:
        out.write(" ".join(c.name for c in schema.children(s)) + "\n")
    elif args.wu_palmer is not None:
        other = _supersense(args.wu_palmer)
        out.write(f"{schema.wu_palmer(s, other):.4f}\n")
    else:
        parent = s.parent.name if s.parent else "-"
        out.write(f"name\t{s.name}\nparent\t{parent}\nsubhierarchy\t{s.subhierarchy}\n"
                  f"depth\t{s.depth}\nabstract\t{str(s.abstract).lower()}\n")
    return EXIT_OK


def _is_bank(path):
    try:
        with open(path, encoding="utf-8") as f:
            first = f.readline()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return first.rstrip("\r\n").split("\t") == list(BANK_HEADER)


def cmd_tag(args, out):
    try:
        if args.model:
            model = load_model(args.model)
        elif _is_bank(args.train):
            model = train(load_bank(args.train))
        else:
            model = train(_read(args.train)[0])
        corpus, diagnostics = _read(args.input, allow_unlabeled=True)
    except OSError as exc:
        raise _Usage(f"cannot read model: {exc.strerror}") from None
    except (FormatError, InvalidExample, EmptyTrainingData) as exc:
        raise _Usage(str(exc)) from None
    for d in diagnostics:
        # existing labels are replaced anyway; only dropped targets matter
        if d.code == "E_UNKNOWN_LABEL":
            sys.stderr.write(f"{args.input}:{d.line} warning: target skipped: {d.message}\n")
    if args.save_model:
        save_model(model, args.save_model)
    write_corpus(tag_corpus(model, corpus), args.output)
    return EXIT_OK


def cmd_migrate(args, out):
    try:
        result = schema.migrate_v1(args.name)
    except UnknownLabel:
        raise _Usage(f"not a known v1 or v2 label: {args.name!r}") from None
    out.write(f"{result}\n")
    return EXIT_OK


def cmd_export_schema(args, out):
    text = schema.export_schema()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_stats(args, out):
    try:
        corpus, _ = _read(args.corpus)
    except FormatError as exc:
        raise _Usage(str(exc)) from None
    counts = Counter(r.label for r in corpus.records if r.label is not None)
    for label, n in sorted(counts.items(), key=lambda kv: (-kv[1], label_sort_key(kv[0]))):
        out.write(f"{n}\t{label}\n")
    return EXIT_OK


def cmd_loo(args, out):
    try:
        bank = load_bank(args.bank)
    except OSError as exc:
        raise _Usage(f"cannot read {args.bank}: {exc.strerror}") from None
    except (FormatError, InvalidExample) as exc:
        raise _Usage(str(exc)) from None
    report, _, _ = leave_one_out(bank)
    out.write(report.to_machine() if args.format == "machine" else report.to_table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="snacs", description="Adposition supersense annotation tools.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("validate", help="check a corpus against the labeling rules")
    v.add_argument("corpus")
    v.add_argument("--strict", action="store_true", help="stop at the first violation")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("score", help="score predicted labels against gold")
    s.add_argument("--gold", required=True)
    s.add_argument("--pred", required=True)
    s.add_argument("--format", choices=("table", "machine"), default="table")
    s.set_defaults(func=cmd_score)

    q = sub.add_parser("query", help="look up a supersense in the hierarchy")
    q.add_argument("label")
    g = q.add_mutually_exclusive_group()
    g.add_argument("--ancestors", action="store_true")
    g.add_argument("--children", action="store_true")
    g.add_argument("--wu-palmer", metavar="OTHER")
    q.set_defaults(func=cmd_query)

    t = sub.add_parser("tag", help="label adposition targets with the most-frequent-label baseline")
    src = t.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="model file written by --save-model")
    src.add_argument("--train", help="example bank or annotated corpus to train on")
    t.add_argument("--save-model", metavar="FILE")
    t.add_argument("input")
    t.add_argument("output")
    t.set_defaults(func=cmd_tag)

    m = sub.add_parser("migrate", help="map a v1 label name to v2")
    m.add_argument("name")
    m.set_defaults(func=cmd_migrate)

    e = sub.add_parser("export-schema", help="write the supersense hierarchy as TSV")
    e.add_argument("--out", metavar="FILE")
    e.set_defaults(func=cmd_export_schema)

    st = sub.add_parser("stats", help="label frequencies in a corpus")
    st.add_argument("corpus")
    st.set_defaults(func=cmd_stats)

    lo = sub.add_parser("loo", help="leave-one-out baseline accuracy on an example bank")
    lo.add_argument("--bank", help="defaults to the bundled bank")
    lo.add_argument("--format", choices=("table", "machine"), default="table")
    lo.set_defaults(func=cmd_loo)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except _Usage as exc:
        sys.stderr.write(f"snacs: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", newline="\n")
    sys.exit(run())
