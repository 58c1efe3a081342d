"""Token- and entity-level precision, recall and F1 with macro/weighted averages.

Conventions:

* any ratio with a zero denominator is 0, including F1 when P + R = 0;
* the per-class set is the union of labels (token mode) or classes
  (entity mode) seen in gold or predictions, in schema order when a schema
  is given; ``O`` is excluded unless ``include_o`` is set;
* macro averages are unweighted means over that set, weighted averages
  weight each class by its gold support;
* token accuracy always counts every token, ``O`` included.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .bio import EntitySpan, bio_to_spans
from .corpus import Document, LabelSchema, iter_sentences

TABLE_COLUMNS = (
    ("Accuracy", "accuracy"),
    ("Macro Precision", "macro_precision"),
    ("Weighted Precision", "weighted_precision"),
    ("Macro Recall", "macro_recall"),
    ("Weighted Recall", "weighted_recall"),
    ("Macro F1", "macro_f1"),
    ("Weighted F1", "weighted_f1"),
)
AGGREGATES = (
    "accuracy",
    "macro_precision",
    "macro_recall",
    "macro_f1",
    "weighted_precision",
    "weighted_recall",
    "weighted_f1",
    "micro_precision",
    "micro_recall",
    "micro_f1",
)


class StreamMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ClassScore:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class EvalReport:
    mode: str
    include_o: bool
    per_class: dict = field(default_factory=dict)
    accuracy: float | None = None
    macro_precision: float = 0.0
    macro_recall: float = 0.0
    macro_f1: float = 0.0
    weighted_precision: float = 0.0
    weighted_recall: float = 0.0
    weighted_f1: float = 0.0
    micro_precision: float = 0.0
    micro_recall: float = 0.0
    micro_f1: float = 0.0

    def to_dict(self) -> dict:
        out = {"mode": self.mode, "include_o": self.include_o}
        out.update({name: getattr(self, name) for name in AGGREGATES})
        out["per_class"] = {
            cls: {"precision": s.precision, "recall": s.recall, "f1": s.f1, "support": s.support}
            for cls, s in self.per_class.items()
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def table(self) -> str:
        """Plain-text aggregate row plus per-class rows."""
        head = " | ".join(name for name, _ in TABLE_COLUMNS)
        row = " | ".join(_fmt(getattr(self, attr)).rjust(len(name)) for name, attr in TABLE_COLUMNS)
        lines = [head, row, ""]
        width = max([5] + [len(c) for c in self.per_class])
        lines.append(f"{'class'.ljust(width)}  precision  recall     f1  support")
        for cls, s in self.per_class.items():
            lines.append(f"{cls.ljust(width)}  {s.precision:9.4f}  {s.recall:6.4f}  {s.f1:5.4f}  {s.support:7d}")
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    return "-" if value is None else f"{value:.4f}"


def _ratio(num, den) -> float:
    return num / den if den else 0.0


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r else 0.0


def _classes(seen: set, schema_order: Sequence[str] | None) -> list[str]:
    ordered = [c for c in schema_order if c in seen] if schema_order else []
    return ordered + sorted(seen - set(ordered))


def _aggregate(mode, include_o, counts, classes, accuracy=None) -> EvalReport:
    """``counts[c] = (tp, fp, fn)``."""
    per_class = {}
    for c in classes:
        tp, fp, fn = counts.get(c, (0, 0, 0))
        p, r = _ratio(tp, tp + fp), _ratio(tp, tp + fn)
        per_class[c] = ClassScore(p, r, _f1(p, r), tp + fn)
    n = len(classes)
    total_support = sum(s.support for s in per_class.values())
    rep = EvalReport(mode, include_o, per_class, accuracy)
    for metric in ("precision", "recall", "f1"):
        vals = [getattr(s, metric) for s in per_class.values()]
        setattr(rep, f"macro_{metric}", sum(vals) / n if n else 0.0)
        weighted = sum(getattr(s, metric) * s.support for s in per_class.values())
        setattr(rep, f"weighted_{metric}", _ratio(weighted, total_support))
    tp = sum(counts.get(c, (0, 0, 0))[0] for c in classes)
    fp = sum(counts.get(c, (0, 0, 0))[1] for c in classes)
    fn = sum(counts.get(c, (0, 0, 0))[2] for c in classes)
    rep.micro_precision, rep.micro_recall = _ratio(tp, tp + fp), _ratio(tp, tp + fn)
    rep.micro_f1 = _f1(rep.micro_precision, rep.micro_recall)
    return rep


def score_labels(
    gold: Sequence[Sequence[str]],
    pred: Sequence[Sequence[str]],
    include_o: bool = False,
    schema: LabelSchema | None = None,
) -> EvalReport:
    """Token-level report over parallel label sequences."""
    if len(gold) != len(pred):
        raise StreamMismatchError(f"{len(gold)} gold sentences vs {len(pred)} predicted")
    counts: dict[str, list[int]] = {}
    correct = total = 0
    for s, (g_seq, p_seq) in enumerate(zip(gold, pred)):
        if len(g_seq) != len(p_seq):
            raise StreamMismatchError(f"sentence {s}: {len(g_seq)} gold vs {len(p_seq)} predicted tokens")
        for g, p in zip(g_seq, p_seq):
            total += 1
            if g == p:
                correct += 1
                counts.setdefault(g, [0, 0, 0])[0] += 1
            else:
                counts.setdefault(p, [0, 0, 0])[1] += 1
                counts.setdefault(g, [0, 0, 0])[2] += 1
    seen = {c for c in counts if include_o or c != "O"}
    order = schema.bio_labels if schema else None
    return _aggregate("token", include_o, counts, _classes(seen, order), _ratio(correct, total))


def token_metrics(
    gold: Sequence[Document],
    pred: Sequence[Document],
    include_o: bool = False,
    schema: LabelSchema | None = None,
) -> EvalReport:
    g_sents, p_sents = list(iter_sentences(gold)), list(iter_sentences(pred))
    for s, (gs, ps) in enumerate(zip(g_sents, p_sents)):
        if gs.forms != ps.forms:
            pos = next(
                (i for i, (a, b) in enumerate(zip(gs.forms, ps.forms)) if a != b),
                min(len(gs), len(ps)),
            )
            raise StreamMismatchError(f"token streams diverge at sentence {s}, token {pos}")
    if len(g_sents) != len(p_sents):
        raise StreamMismatchError(f"{len(g_sents)} gold sentences vs {len(p_sents)} predicted")
    return score_labels([s.labels for s in g_sents], [s.labels for s in p_sents], include_o, schema)


def entity_metrics(
    gold_spans: Sequence[Sequence[EntitySpan]],
    pred_spans: Sequence[Sequence[EntitySpan]],
    schema: LabelSchema | None = None,
) -> EvalReport:
    """Strict entity-level report: a prediction is correct only when start,
    end and class all match a gold span of the same sentence."""
    if len(gold_spans) != len(pred_spans):
        raise StreamMismatchError(f"{len(gold_spans)} gold sentences vs {len(pred_spans)} predicted")
    counts: dict[str, list[int]] = {}
    for g_sent, p_sent in zip(gold_spans, pred_spans):
        g_set, p_set = set(map(tuple, g_sent)), set(map(tuple, p_sent))
        for span in p_set:
            counts.setdefault(span[2], [0, 0, 0])[0 if span in g_set else 1] += 1
        for span in g_set - p_set:
            counts.setdefault(span[2], [0, 0, 0])[2] += 1
    order = schema.entity_classes if schema else None
    return _aggregate("entity", False, counts, _classes(set(counts), order))


def entity_metrics_from_docs(gold: Sequence[Document], pred: Sequence[Document], schema=None) -> EvalReport:
    return entity_metrics(
        [bio_to_spans(s.labels) for s in iter_sentences(gold)],
        [bio_to_spans(s.labels) for s in iter_sentences(pred)],
        schema,
    )


def compare_reports(a: EvalReport, b: EvalReport) -> dict:
    """Deltas ``b - a`` for every aggregate and per-class value."""
    if a.mode != b.mode or a.include_o != b.include_o:
        raise ValueError(f"cannot compare {a.mode}/include_o={a.include_o} with {b.mode}/include_o={b.include_o}")
    deltas = {}
    for name in AGGREGATES:
        va, vb = getattr(a, name), getattr(b, name)
        deltas[name] = None if va is None or vb is None else vb - va
    per_class = {}
    zero = ClassScore(0.0, 0.0, 0.0, 0)
    for cls in list(a.per_class) + [c for c in b.per_class if c not in a.per_class]:
        sa, sb = a.per_class.get(cls, zero), b.per_class.get(cls, zero)
        per_class[cls] = {m: getattr(sb, m) - getattr(sa, m) for m in ("precision", "recall", "f1")}
    deltas["per_class"] = per_class
    return deltas


def render_comparison(deltas: dict) -> str:
    lines = []
    for name in AGGREGATES:
        d = deltas[name]
        lines.append(f"{name:20s} {'n/a' if d is None else f'{d:+.4f}'}")
    for cls, vals in deltas["per_class"].items():
        lines.append(f"{cls:20s} " + "  ".join(f"{m[0].upper()} {v:+.4f}" for m, v in vals.items()))
    return "\n".join(lines) + "\n"
