"""Validation, repair and span conversion for BIO label sequences."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .corpus import LabelSchema

ORPHAN_I = "OrphanI"
CLASS_MISMATCH_I = "ClassMismatchI"
UNKNOWN_LABEL = "UnknownLabel"


class InvalidBioError(ValueError):
    pass


class EntitySpan(NamedTuple):
    """Half-open token range ``[start, end)`` tagged with an entity class."""

    start: int
    end: int
    class_name: str


@dataclass(frozen=True)
class BioViolation:
    position: int
    kind: str
    detail: str = ""


def _split(label: str, known) -> tuple[str, str | None]:
    """Return (prefix, class) with prefix in {'O', 'B', 'I', '?'}."""
    if label == "O":
        return "O", None
    if known is not None and label not in known:
        return "?", None
    if len(label) > 2 and label[1] == "-" and label[0] in "BI":
        return label[0], label[2:]
    return "?", None


def _known(schema: LabelSchema | None):
    return None if schema is None else frozenset(schema.bio_labels)


def validate_bio(labels: Sequence[str], schema: LabelSchema | None = None) -> list[BioViolation]:
    """List grammar violations; an empty list means ``labels`` is well-formed.

    Without a schema any syntactically valid ``O``/``B-x``/``I-x`` label is
    accepted.
    """
    known = _known(schema)
    out = []
    prev_kind, prev_cls = "O", None
    for i, label in enumerate(labels):
        kind, cls = _split(label, known)
        if kind == "?":
            out.append(BioViolation(i, UNKNOWN_LABEL, f"unknown label {label!r}"))
        elif kind == "I":
            if prev_kind not in ("B", "I"):
                out.append(BioViolation(i, ORPHAN_I, f"{label} follows {labels[i - 1] if i else 'sentence start'}"))
            elif prev_cls != cls:
                out.append(BioViolation(i, CLASS_MISMATCH_I, f"{label} follows {labels[i - 1]}"))
        prev_kind, prev_cls = kind, cls
    return out


def is_valid_bio(labels: Sequence[str], schema: LabelSchema | None = None) -> bool:
    return not validate_bio(labels, schema)


def repair_bio(
    labels: Sequence[str],
    schema: LabelSchema | None = None,
    mismatch: str = "new",
) -> list[str]:
    """Make ``labels`` well-formed in a single left-to-right pass.

    Unknown labels become ``O``; an ``I-X`` with no ``B-X``/``I-X`` before it
    becomes ``B-X``. A class-mismatched ``I-X`` after ``B-Y``/``I-Y`` starts a
    new entity (``mismatch="new"``, giving ``B-X``) or is absorbed into the
    running one (``mismatch="continue"``, giving ``I-Y``). Repaired labels are
    the context for the next position, which makes the repair idempotent.
    """
    if mismatch not in ("new", "continue"):
        raise ValueError(f"mismatch must be 'new' or 'continue', not {mismatch!r}")
    known = _known(schema)
    out = []
    prev_kind, prev_cls = "O", None
    for label in labels:
        kind, cls = _split(label, known)
        if kind == "?":
            kind, cls, label = "O", None, "O"
        elif kind == "I":
            if prev_kind == "O":
                kind, label = "B", "B-" + cls
            elif prev_cls != cls:
                if mismatch == "new":
                    kind, label = "B", "B-" + cls
                else:
                    cls, label = prev_cls, "I-" + prev_cls
        out.append(label)
        prev_kind, prev_cls = kind, cls
    return out


def bio_to_spans(labels: Sequence[str]) -> list[EntitySpan]:
    spans = []
    start, cls = None, None
    for i, label in enumerate(labels):
        kind, lcls = _split(label, None)
        if kind == "I" and start is not None and lcls == cls:
            continue
        if kind in ("I", "?"):
            raise InvalidBioError(f"invalid BIO label {label!r} at position {i}; run repair_bio first")
        if start is not None:
            spans.append(EntitySpan(start, i, cls))
            start, cls = None, None
        if kind == "B":
            start, cls = i, lcls
    if start is not None:
        spans.append(EntitySpan(start, len(labels), cls))
    return spans


def spans_to_bio(spans: Sequence[EntitySpan], length: int) -> list[str]:
    labels = ["O"] * length
    prev_end = 0
    for span in sorted(spans):
        start, end, cls = span
        if not 0 <= start < end <= length:
            raise ValueError(f"span {tuple(span)} outside sentence of length {length}")
        if start < prev_end:
            raise ValueError(f"overlapping span {tuple(span)}")
        labels[start] = "B-" + cls
        for i in range(start + 1, end):
            labels[i] = "I-" + cls
        prev_end = end
    return labels
