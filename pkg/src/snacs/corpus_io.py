"""Reading and writing annotated corpora.

File layout::

    # sent_id = ex0001
    1	I
    2	arrived
    ...

    # annotations
    ex0001	5:5	ago	p.Time	p.Interval	None

Sentence blocks come first, separated by blank lines, followed by a
single annotation block.  Each record gives the sentence id, a 1-based
inclusive token span, the adposition lemma, the scene role and function
columns, and the construction context.  A congruent label repeats the
same supersense in both columns; special labels (e.g. ```d``) must also
be repeated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable

from .construal import (
    ARROW, E_UNKNOWN_LABEL, PREFIX, ConstructionContext, Label,
    check, parse_label,
)
from .errors import FormatError, MalformedLabel, UnknownLabel, ValidationError
from .schema import SpecialLabel

SENT_PREFIX = "# sent_id = "
ANNOTATIONS = "# annotations"
# ROLE/FUNC value for a target that has not been labeled yet
UNLABELED = "_"


class Mode(enum.Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class Sentence:
    sent_id: str
    tokens: tuple[str, ...]

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class AnnotationRecord:
    sent_id: str
    start: int
    end: int
    form: str
    lemma: str
    label: Label | None
    ctx: ConstructionContext = ConstructionContext.NONE
    # source line, for diagnostics only
    line: int | None = field(default=None, compare=False, repr=False)

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.sent_id, self.start, self.end)


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...] = ()
    records: tuple[AnnotationRecord, ...] = ()

    def sentence(self, sent_id: str) -> Sentence:
        for s in self.sentences:
            if s.sent_id == sent_id:
                return s
        raise KeyError(sent_id)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    code: str
    message: str

    def __str__(self):
        return f"{self.line}: {self.code} {self.message}"


def make_record(sentence: Sentence, start: int, end: int, lemma: str, label: Label,
                ctx: ConstructionContext = ConstructionContext.NONE,
                line: int | None = None) -> AnnotationRecord:
    form = " ".join(sentence.tokens[start - 1:end])
    return AnnotationRecord(sentence.sent_id, start, end, form, lemma, label, ctx, line)


# ---------------------------------------------------------------------------
# label columns

def label_columns(label: Label | None) -> tuple[str, str]:
    if label is None:
        return UNLABELED, UNLABELED
    if isinstance(label, SpecialLabel):
        return label.value, label.value
    return PREFIX + label.role.name, PREFIX + label.function.name


def label_from_columns(role: str, function: str) -> Label:
    """Combine the ROLE and FUNC columns into one label.

    Raises UnknownLabel for names outside the inventory and MalformedLabel
    for anything else that is not a valid pair.
    """
    role, function = role.strip(), function.strip()
    specials = {s.value for s in SpecialLabel}
    if role in specials or function in specials:
        if role != function:
            raise MalformedLabel(f"special label must fill both columns: {role!r} / {function!r}")
        return parse_label(role)
    if ARROW in role or ARROW in function:
        raise MalformedLabel(f"{ARROW!r} is not allowed inside a column")
    if not role or not function:
        raise MalformedLabel("empty ROLE or FUNC column")
    return parse_label(f"{role}{ARROW}{function}")


# ---------------------------------------------------------------------------
# parsing

def _parse_span(text, lineno):
    try:
        a, b = text.split(":")
        start, end = int(a), int(b)
    except ValueError:
        raise FormatError(f"bad span {text!r}; expected START:END", lineno) from None
    if start < 1 or end < start:
        raise FormatError(f"bad span {text!r}", lineno)
    return start, end


def parse_corpus(text: str, mode: Mode | str = Mode.STRICT,
                 allow_unlabeled: bool = False) -> tuple[Corpus, list[Diagnostic]]:
    """Parse corpus text.

    In strict mode the first label that breaks a rule raises
    ValidationError.  In lenient mode every record is kept and each rule
    violation is returned as a Diagnostic; records whose label names are
    unknown are dropped with an E_UNKNOWN_LABEL diagnostic.  Structural
    problems raise FormatError in both modes.

    With *allow_unlabeled*, records with ``_`` in both label columns are
    kept with ``label=None`` (targets waiting to be tagged).
    """
    mode = Mode(mode)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    sentences: dict[str, Sentence] = {}
    order: list[Sentence] = []
    records: list[AnnotationRecord] = []
    diagnostics: list[Diagnostic] = []
    taken: dict[str, list[tuple[int, int]]] = {}

    i, n = 0, len(lines)
    seen_annotations = False
    while i < n:
        line = lines[i].rstrip("\r")
        lineno = i + 1
        if not line.strip():
            i += 1
            continue
        if seen_annotations:
            rec, diags = _parse_record(line, lineno, sentences, taken, mode, allow_unlabeled)
            diagnostics.extend(diags)
            if rec is not None:
                records.append(rec)
            i += 1
        elif line == ANNOTATIONS:
            seen_annotations = True
            i += 1
        elif line.startswith(SENT_PREFIX):
            sent_id = line[len(SENT_PREFIX):]
            if not sent_id or sent_id != sent_id.strip() or "\t" in sent_id:
                raise FormatError(f"bad sentence id {sent_id!r}", lineno)
            if sent_id in sentences:
                raise FormatError(f"duplicate sentence id {sent_id!r}", lineno)
            tokens = []
            i += 1
            while i < n and lines[i].strip() and not lines[i].startswith("#"):
                cols = lines[i].rstrip("\r").split("\t")
                if len(cols) != 2:
                    raise FormatError(f"token line needs 2 columns, got {len(cols)}", i + 1)
                if cols[0] != str(len(tokens) + 1):
                    raise FormatError(f"expected token index {len(tokens) + 1}, got {cols[0]!r}", i + 1)
                if not cols[1]:
                    raise FormatError("empty token", i + 1)
                tokens.append(cols[1])
                i += 1
            if not tokens:
                raise FormatError(f"sentence {sent_id!r} has no tokens", lineno)
            sent = Sentence(sent_id, tuple(tokens))
            sentences[sent_id] = sent
            order.append(sent)
        else:
            raise FormatError(f"unexpected line {line!r}", lineno)

    if not seen_annotations:
        raise FormatError(f"missing {ANNOTATIONS!r} block", n + 1)
    return Corpus(tuple(order), tuple(records)), diagnostics


def _parse_record(line, lineno, sentences, taken, mode, allow_unlabeled=False):
    cols = line.split("\t")
    if len(cols) != 6:
        raise FormatError(f"annotation line needs 6 columns, got {len(cols)}", lineno)
    sent_id, span_text, lemma, role, function, ctx_text = cols
    sent = sentences.get(sent_id)
    if sent is None:
        raise FormatError(f"unknown sentence id {sent_id!r}", lineno)
    start, end = _parse_span(span_text, lineno)
    if end > len(sent):
        raise FormatError(f"span {span_text} exceeds sentence length {len(sent)}", lineno)
    for a, b in taken.get(sent_id, []):
        if start <= b and a <= end:
            raise FormatError(f"span {span_text} overlaps {a}:{b}", lineno)
    if not lemma:
        raise FormatError("empty lemma", lineno)
    try:
        ctx = ConstructionContext.parse(ctx_text)
    except MalformedLabel as exc:
        raise FormatError(str(exc), lineno) from None
    if allow_unlabeled and role == function == UNLABELED:
        taken.setdefault(sent_id, []).append((start, end))
        return make_record(sent, start, end, lemma, None, ctx, lineno), []
    try:
        label = label_from_columns(role, function)
    except UnknownLabel as exc:
        if mode is Mode.STRICT:
            raise ValidationError(E_UNKNOWN_LABEL, str(exc), lineno) from None
        return None, [Diagnostic(lineno, E_UNKNOWN_LABEL, str(exc))]
    except MalformedLabel as exc:
        raise FormatError(str(exc), lineno) from None

    taken.setdefault(sent_id, []).append((start, end))
    rec = make_record(sent, start, end, lemma, label, ctx, lineno)
    violations = check(label, ctx)
    if violations and mode is Mode.STRICT:
        v = violations[0]
        raise ValidationError(v.code, v.message, lineno)
    return rec, [Diagnostic(lineno, v.code, v.message) for v in violations]


def read_corpus(path: str | PathLike, mode: Mode | str = Mode.STRICT,
                allow_unlabeled: bool = False) -> tuple[Corpus, list[Diagnostic]]:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_corpus(f.read(), mode, allow_unlabeled)


# ---------------------------------------------------------------------------
# serialization

def serialize_corpus(corpus: Corpus) -> str:
    blocks = []
    for sent in corpus.sentences:
        lines = [SENT_PREFIX + sent.sent_id]
        lines += [f"{k}\t{tok}" for k, tok in enumerate(sent.tokens, start=1)]
        blocks.append("\n".join(lines))
    ann = [ANNOTATIONS]
    for r in corpus.records:
        role, function = label_columns(r.label)
        ann.append("\t".join([r.sent_id, f"{r.start}:{r.end}", r.lemma, role, function, r.ctx.value]))
    blocks.append("\n".join(ann))
    return "\n\n".join(blocks) + "\n"


def write_corpus(corpus: Corpus, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_corpus(corpus))


def corpus_from_entries(entries: Iterable, id_format: str = "ex{:04d}") -> Corpus:
    """One sentence per example-bank entry, each with its single annotation."""
    from .examplebank import locate_target

    sentences, records = [], []
    for k, e in enumerate(entries, start=1):
        tokens, start, end = locate_target(e.sentence, e.adposition)
        sent = Sentence(id_format.format(k), tuple(tokens))
        sentences.append(sent)
        records.append(make_record(sent, start, end, e.adposition, e.label, e.ctx))
    return Corpus(tuple(sentences), tuple(records))

