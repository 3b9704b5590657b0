"""Transcribed annotated examples and the label inventories derived from them.

The bank ships as ``data/examples.tsv``.  Each row holds one annotated
adposition token.  When the adposition lemma occurs more than once in a
sentence, the intended token is wrapped in braces, e.g.
``I helped {as} much as I could.``
"""

from __future__ import annotations

import functools
import io
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from os import PathLike
from typing import Iterable, Mapping

from .construal import (
    ConstructionContext, Construal, Label, check, label_sort_key, parse_label,
)
from .errors import FormatError, InvalidExample, MalformedLabel, UnknownLabel
from .schema import SpecialLabel, Supersense

HEADER = ("SENTENCE", "ADPOSITION", "LABEL", "CTX", "CITATION")

# words, with internal hyphens/colons/periods/commas kept together ("2:00",
# "20,000", "He-Who-Must-Not-Be-Named"); the possessive clitic on its own
_TOKEN_RE = re.compile(r"'s(?!\w)|\w+(?:[-:/.,]\w+)*|\S")

# multiword lemmas like on_a_basis may be split by a few inserted words
MAX_GAP = 5


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def _tokens_with_offsets(text):
    return [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]


def _piece_matches(piece, token):
    token = token.lower()
    if piece == "'s":
        return token in ("'s", "'")
    return piece == token


def _candidate_spans(tokens: list[str], pieces: list[str]) -> list[tuple[int, int]]:
    """0-based inclusive spans where *pieces* occur in order.

    Contiguous matches win; gapped matches are only tried when there are
    none, and each later piece is taken at its nearest occurrence.
    """
    n, k = len(tokens), len(pieces)
    contiguous = [(i, i + k - 1) for i in range(n - k + 1)
                  if all(_piece_matches(p, tokens[i + j]) for j, p in enumerate(pieces))]
    if contiguous or k == 1:
        return contiguous
    gapped = []
    for i in range(n):
        if not _piece_matches(pieces[0], tokens[i]):
            continue
        pos, gap = i, 0
        for p in pieces[1:]:
            nxt = next((j for j in range(pos + 1, n) if _piece_matches(p, tokens[j])), None)
            if nxt is None:
                break
            gap += nxt - pos - 1
            pos = nxt
        else:
            if gap <= MAX_GAP:
                gapped.append((i, pos))
    return gapped


def locate_target(sentence: str, adposition: str) -> tuple[list[str], int, int]:
    """Tokenize *sentence* and find the annotated adposition token(s).

    Returns ``(tokens, start, end)`` with 1-based inclusive token indices.
    Raises ValueError when the target is missing or ambiguous.
    """
    marked = None
    if "{" in sentence:
        marked = sentence.index("{")
        plain = sentence.replace("{", "").replace("}", "")
    else:
        plain = sentence
    toks = _tokens_with_offsets(plain)
    tokens = [t for t, _ in toks]
    spans = _candidate_spans(tokens, adposition.lower().split("_"))
    if marked is not None:
        spans = [s for s in spans if toks[s[0]][1] == marked]
    if not spans:
        raise ValueError(f"adposition {adposition!r} not found in {sentence!r}")
    if len(spans) > 1:
        raise ValueError(f"adposition {adposition!r} is ambiguous in {sentence!r}; "
                         "mark the target with braces")
    start, end = spans[0]
    return tokens, start + 1, end + 1


@dataclass(frozen=True)
class ExampleEntry:
    sentence: str
    adposition: str
    label: Label
    ctx: ConstructionContext
    citation: str

    @property
    def text(self) -> str:
        """The sentence without target braces."""
        return self.sentence.replace("{", "").replace("}", "")

    def target(self) -> tuple[list[str], int, int]:
        return locate_target(self.sentence, self.adposition)


@dataclass(frozen=True)
class ExampleBank:
    entries: tuple[ExampleEntry, ...]
    by_adposition: Mapping[str, Counter] = field(repr=False)
    attested: frozenset[tuple[Supersense, Supersense]] = field(repr=False)
    special_labels: frozenset[SpecialLabel] = field(repr=False, default=frozenset())

    def __len__(self):
        return len(self.entries)

    def is_attested(self, label: Label) -> bool:
        if isinstance(label, SpecialLabel):
            return label in self.special_labels
        return (label.role, label.function) in self.attested

    def lemmas(self) -> list[str]:
        return sorted(self.by_adposition)


def build_bank(entries: Iterable[ExampleEntry]) -> ExampleBank:
    entries = tuple(entries)
    index: dict[str, Counter] = {}
    pairs, specials = set(), set()
    for e in entries:
        index.setdefault(e.adposition, Counter())[(e.label, e.ctx)] += 1
        if isinstance(e.label, SpecialLabel):
            specials.add(e.label)
        else:
            pairs.add((e.label.role, e.label.function))
    return ExampleBank(entries, index, frozenset(pairs), frozenset(specials))


def _parse_row(cols, lineno):
    if len(cols) != len(HEADER):
        raise FormatError(f"expected {len(HEADER)} tab-separated columns, got {len(cols)}", lineno)
    sentence, adposition, label_text, ctx_text, citation = cols
    if not sentence.strip() or not adposition.strip():
        raise FormatError("empty sentence or adposition", lineno)
    try:
        label = parse_label(label_text)
        ctx = ConstructionContext.parse(ctx_text)
    except (UnknownLabel, MalformedLabel) as exc:
        raise FormatError(str(exc), lineno) from None
    entry = ExampleEntry(sentence, adposition, label, ctx, citation)
    problems = check(label, ctx)
    if problems:
        raise InvalidExample(f"line {lineno}: {label} in context {ctx}: "
                             + "; ".join(str(v) for v in problems))
    try:
        entry.target()
    except ValueError as exc:
        raise InvalidExample(f"line {lineno}: {exc}") from None
    return entry


def parse_bank(text: str) -> ExampleBank:
    lines = text.splitlines()
    if not lines or tuple(lines[0].split("\t")) != HEADER:
        raise FormatError("missing or wrong header; expected " + "\\t".join(HEADER), 1)
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        entries.append(_parse_row(line.split("\t"), lineno))
    return build_bank(entries)


def load_bank(source: str | PathLike | io.TextIOBase | None = None) -> ExampleBank:
    """Load an example bank from a path or open text file.

    With no argument, loads the bank bundled with the package.
    """
    if source is None:
        text = resources.files("snacs").joinpath("data/examples.tsv").read_text(encoding="utf-8")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as f:
            text = f.read()
    return parse_bank(text)


@functools.lru_cache(maxsize=1)
def default_bank() -> ExampleBank:
    return load_bank()


def attested_labels(bank: ExampleBank, adposition: str) -> list[tuple[Label, int]]:
    """Labels seen for *adposition*, most frequent first.

    Counts are summed over construction contexts; ties go to the label
    whose canonical serialization sorts first.
    """
    counts: Counter = Counter()
    for (label, _ctx), n in bank.by_adposition.get(adposition, Counter()).items():
        counts[label] += n
    return sorted(counts.items(), key=lambda kv: (-kv[1], label_sort_key(kv[0])))


def role_coverage(bank: ExampleBank) -> Counter:
    """How many entries use each supersense as scene role."""
    return Counter(e.label.role for e in bank.entries if isinstance(e.label, Construal))
