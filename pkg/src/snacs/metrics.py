"""Scoring predicted adposition annotations against gold."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .construal import Label
from .corpus_io import Corpus
from .errors import CorpusMismatch
from .schema import SpecialLabel, wu_palmer


@dataclass(frozen=True)
class ScoreReport:
    n_gold: int
    n_pred: int
    n_matched_spans: int
    role_acc: float
    func_acc: float
    full_acc: float
    role_wp: float
    func_wp: float
    ident_p: float
    ident_r: float
    ident_f: float
    confusion: dict[tuple[str, str], int] = field(default_factory=dict)

    SUMMARY_FIELDS = (
        "n_gold", "n_pred", "n_matched_spans",
        "ident_p", "ident_r", "ident_f",
        "role_acc", "func_acc", "full_acc", "role_wp", "func_wp",
    )

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.SUMMARY_FIELDS}
        out["confusion"] = [[g, p, n] for (g, p), n in sorted(self.confusion.items())]
        return out

    def to_machine(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_table(self) -> str:
        lines = []
        for k in self.SUMMARY_FIELDS:
            v = getattr(self, k)
            lines.append(f"{k:<16}{v}" if isinstance(v, int) else f"{k:<16}{v:.4f}")
        if self.confusion:
            lines.append("")
            lines.append("confusion (gold -> pred: count)")
            for (g, p), n in sorted(self.confusion.items()):
                mark = "" if g == p else "  *"
                lines.append(f"  {g} -> {p}: {n}{mark}")
        return "\n".join(lines) + "\n"


def _sides(label: Label):
    if isinstance(label, SpecialLabel):
        return label, label
    return label.role, label.function


def _similarity(a, b) -> float:
    if isinstance(a, SpecialLabel) or isinstance(b, SpecialLabel):
        return 1.0 if a is b else 0.0
    return wu_palmer(a, b)


def _inventory(c: Corpus):
    return {s.sent_id: len(s) for s in c.sentences}


def score(gold: Corpus, pred: Corpus) -> ScoreReport:
    """Compare *pred* with *gold* over exactly matching token spans.

    Accuracies and Wu-Palmer means are taken over matched spans only and
    are 0.0 when nothing matched.
    """
    if _inventory(gold) != _inventory(pred):
        raise CorpusMismatch("gold and predicted corpora have different sentences or token counts")
    # unlabeled targets are neither gold annotations nor predictions
    g = {r.key: r.label for r in gold.records if r.label is not None}
    p = {r.key: r.label for r in pred.records if r.label is not None}
    matched = sorted(g.keys() & p.keys())

    role_hits = func_hits = full_hits = 0
    role_wp = func_wp = 0.0
    confusion: Counter = Counter()
    for key in matched:
        gl, pl = g[key], p[key]
        gr, gf = _sides(gl)
        pr, pf = _sides(pl)
        role_hits += gr is pr
        func_hits += gf is pf
        full_hits += gl == pl
        role_wp += _similarity(gr, pr)
        func_wp += _similarity(gf, pf)
        confusion[(str(gl), str(pl))] += 1

    m = len(matched)
    ident_p = m / len(p) if p else 0.0
    ident_r = m / len(g) if g else 0.0
    ident_f = 2 * ident_p * ident_r / (ident_p + ident_r) if ident_p + ident_r else 0.0

    def mean(x):
        return x / m if m else 0.0

    return ScoreReport(
        n_gold=len(g), n_pred=len(p), n_matched_spans=m,
        role_acc=mean(role_hits), func_acc=mean(func_hits), full_acc=mean(full_hits),
        role_wp=mean(role_wp), func_wp=mean(func_wp),
        ident_p=ident_p, ident_r=ident_r, ident_f=ident_f,
        confusion=dict(sorted(confusion.items())),
    )
