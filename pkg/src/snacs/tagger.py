"""Most-frequent-label baseline for adposition supersense tagging.

Construction context is supplied with each target, not predicted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Mapping

from .construal import Construal, ConstructionContext, Label, check, label_sort_key, parse_label
from .corpus_io import AnnotationRecord, Corpus, corpus_from_entries
from .errors import EmptyTrainingData, FormatError, MalformedLabel, UnknownLabel
from .examplebank import ExampleBank
from .metrics import ScoreReport, score
from .schema import SpecialLabel

Ctx = ConstructionContext
Triple = tuple[str, Label, Ctx]

MODEL_HEADER = ("LEMMA", "LABEL", "CTX", "COUNT")

CONTEXT_DEFAULTS: dict[Ctx, Label] = {
    Ctx.SGENITIVE: Construal.of("Gestalt"),
    Ctx.PASSIVE_BY: Construal.of("Agent"),
    Ctx.AS_COMPARATIVE_FIRST: Construal.of("Extent"),
    Ctx.INFINITIVAL_TO: SpecialLabel.OTHER_INFINITIVE,
    Ctx.INFINITIVAL_FOR_SUBJECT: SpecialLabel.OTHER_INFINITIVE,
}
# used only when no training label at all is valid without a construction
LAST_RESORT: Label = Construal.of("Circumstance")


def _rank_key(item):
    (label, ctx), n = item
    return (-n, label_sort_key(label), ctx.value)


def _valid(label: Label, ctx: Ctx) -> bool:
    return not check(label, ctx)


@dataclass(frozen=True)
class BaselineModel:
    per_lemma: Mapping[str, tuple[tuple[tuple[Label, Ctx], int], ...]]
    global_fallback: Label

    def predict(self, lemma: str, ctx: Ctx = Ctx.NONE) -> Label:
        return predict(self, lemma, ctx)

    def triples(self) -> list[tuple[str, Label, Ctx, int]]:
        return [(lemma, label, c, n)
                for lemma in sorted(self.per_lemma)
                for (label, c), n in self.per_lemma[lemma]]


def train_from_triples(triples: Iterable[Triple]) -> BaselineModel:
    """Count (lemma, label, ctx) triples.

    Triples whose label breaks a rule in its own context are ignored, so
    every stored label is valid where it was seen.
    """
    counts: dict[str, Counter] = {}
    for lemma, label, ctx in triples:
        if _valid(label, ctx):
            counts.setdefault(lemma, Counter())[(label, ctx)] += 1
    if not counts:
        raise EmptyTrainingData("no usable training examples")
    return _from_counts(counts)


def _from_counts(counts: Mapping[str, Counter]) -> BaselineModel:
    per_lemma = {lemma: tuple(sorted(c.items(), key=_rank_key)) for lemma, c in counts.items()}
    overall: Counter = Counter()
    for c in counts.values():
        for (label, _ctx), n in c.items():
            overall[label] += n
    fallback = next((label for label, _ in sorted(overall.items(),
                                                  key=lambda kv: (-kv[1], label_sort_key(kv[0])))
                     if _valid(label, Ctx.NONE)), LAST_RESORT)
    return BaselineModel(per_lemma, fallback)


def train(source: ExampleBank | Corpus) -> BaselineModel:
    if isinstance(source, ExampleBank):
        triples = [(e.adposition, e.label, e.ctx) for e in source.entries]
    elif isinstance(source, Corpus):
        triples = [(r.lemma, r.label, r.ctx) for r in source.records if r.label is not None]
    else:
        raise TypeError(f"cannot train from {type(source).__name__}")
    return train_from_triples(triples)


def predict(model: BaselineModel, lemma: str, ctx: Ctx = Ctx.NONE) -> Label:
    """Best label for *lemma* that is valid in *ctx*.

    Labels seen in the same context are tried first, then labels seen in
    any context, then a fixed default for the context.
    """
    ranked = model.per_lemma.get(lemma, ())
    for (label, seen_ctx), _ in ranked:
        if seen_ctx is ctx and _valid(label, ctx):
            return label
    for (label, _), _ in ranked:
        if _valid(label, ctx):
            return label
    if ctx is Ctx.NONE:
        return model.global_fallback
    return CONTEXT_DEFAULTS[ctx]


def _relabel(r: AnnotationRecord, label: Label) -> AnnotationRecord:
    return AnnotationRecord(r.sent_id, r.start, r.end, r.form, r.lemma, label, r.ctx)


def tag_corpus(model: BaselineModel, corpus: Corpus) -> Corpus:
    """Replace every record's label with the model's prediction."""
    records = tuple(_relabel(r, predict(model, r.lemma, r.ctx)) for r in corpus.records)
    return Corpus(corpus.sentences, records)


# ---------------------------------------------------------------------------
# persistence

def serialize_model(model: BaselineModel) -> str:
    lines = ["\t".join(MODEL_HEADER)]
    for lemma, label, ctx, n in model.triples():
        lines.append(f"{lemma}\t{label}\t{ctx.value}\t{n}")
    return "\n".join(lines) + "\n"


def save_model(model: BaselineModel, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_model(model))


def parse_model(text: str) -> BaselineModel:
    lines = text.splitlines()
    if not lines or tuple(lines[0].split("\t")) != MODEL_HEADER:
        raise FormatError("missing or wrong model header", 1)
    counts: dict[str, Counter] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != len(MODEL_HEADER):
            raise FormatError(f"expected {len(MODEL_HEADER)} columns, got {len(cols)}", lineno)
        lemma, label_text, ctx_text, n_text = cols
        try:
            label = parse_label(label_text)
            ctx = Ctx.parse(ctx_text)
            n = int(n_text)
        except (UnknownLabel, MalformedLabel, ValueError) as exc:
            raise FormatError(str(exc), lineno) from None
        if n < 1:
            raise FormatError(f"count must be positive, got {n}", lineno)
        if not _valid(label, ctx):
            raise FormatError(f"{label} is not valid in context {ctx}", lineno)
        counts.setdefault(lemma, Counter())[(label, ctx)] += n
    if not counts:
        raise EmptyTrainingData("model file has no entries")
    return _from_counts(counts)


def load_model(path: str | PathLike) -> BaselineModel:
    with open(path, encoding="utf-8") as f:
        return parse_model(f.read())


# ---------------------------------------------------------------------------
# evaluation

def leave_one_out(bank: ExampleBank) -> tuple[ScoreReport, Corpus, Corpus]:
    """Tag each bank entry with a model trained on all the other entries.

    Returns the score together with the gold and predicted corpora.
    """
    entries = bank.entries
    gold = corpus_from_entries(entries)
    triples = [(e.adposition, e.label, e.ctx) for e in entries]
    full: dict[str, Counter] = {}
    for lemma, label, ctx in triples:
        if _valid(label, ctx):
            full.setdefault(lemma, Counter())[(label, ctx)] += 1

    predicted = []
    for rec, (lemma, label, ctx) in zip(gold.records, triples):
        counts = dict(full)
        if lemma in counts and counts[lemma][(label, ctx)]:
            held = counts[lemma].copy()
            held[(label, ctx)] -= 1
            held = +held
            if held:
                counts[lemma] = held
            else:
                del counts[lemma]
        model = _from_counts(counts) if counts else BaselineModel({}, LAST_RESORT)
        predicted.append(_relabel(rec, predict(model, lemma, ctx)))
    pred = Corpus(gold.sentences, tuple(predicted))
    return score(gold, pred), gold, pred
