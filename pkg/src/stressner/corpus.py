"""Annotation schema and the three-column CoNLL corpus format.

Each non-blank, non-comment line is ``FORM<TAB>POS<TAB>LABEL``. Blank lines
separate sentences and ``#doc id=<id>`` opens a new document; any other line
starting with ``#`` is a comment unless it has exactly three columns.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_CLASSES = (
    "PlantSpecies",
    "AbioticStress",
    "BioticStress",
    "MolecularResponse",
    "PhysiologicalResponse",
    "AgronomicResponse",
    "BiochemicalResponse",
)

# Universal POS tags; other tags are accepted verbatim.
UPOS_TAGS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)

DEFAULT_DOC_ID = "default"
_DOC_HEADER = re.compile(r"^#doc id=(\S+)\s*$")


class ConllParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class LabelSchema:
    entity_classes: tuple[str, ...] = DEFAULT_CLASSES

    def __post_init__(self):
        classes = tuple(self.entity_classes)
        object.__setattr__(self, "entity_classes", classes)
        if len(set(classes)) != len(classes):
            raise ValueError(f"duplicate entity classes in {classes}")
        for name in classes:
            if not name or "-" in name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid entity class name {name!r}")

    @property
    def bio_labels(self) -> tuple[str, ...]:
        labels = ["O"]
        for name in self.entity_classes:
            labels += [f"B-{name}", f"I-{name}"]
        return tuple(labels)

    @property
    def label_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.bio_labels)}

    def __contains__(self, label: str) -> bool:
        return label in self.label_index

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "LabelSchema":
        """Schema whose classes are those seen in ``labels``, in first-seen order."""
        seen: dict[str, None] = {}
        for label in labels:
            if label != "O" and label[:2] in ("B-", "I-"):
                seen.setdefault(label[2:], None)
        return cls(tuple(seen))


@dataclass(frozen=True)
class Token:
    form: str
    pos: str
    label: str = "O"

    def __post_init__(self):
        if not self.form or "\n" in self.form or "\t" in self.form:
            raise ValueError(f"invalid token form {self.form!r}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    # Source line of each token, when parsed from a file.
    lines: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise ValueError("a sentence needs at least one token")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]

    @property
    def pos_tags(self) -> list[str]:
        return [t.pos for t in self.tokens]

    @property
    def labels(self) -> list[str]:
        return [t.label for t in self.tokens]

    def with_labels(self, labels: Sequence[str]) -> "Sentence":
        if len(labels) != len(self.tokens):
            raise ValueError(f"expected {len(self.tokens)} labels, got {len(labels)}")
        tokens = tuple(Token(t.form, t.pos, lab) for t, lab in zip(self.tokens, labels))
        return Sentence(tokens, self.lines)

    @classmethod
    def from_columns(cls, forms, pos_tags, labels=None) -> "Sentence":
        labels = labels if labels is not None else ["O"] * len(forms)
        return cls(tuple(Token(f, p, lab) for f, p, lab in zip(forms, pos_tags, labels)))


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))


def parse_conll(
    text: str,
    schema: LabelSchema | None = None,
    strict: bool = True,
    allow_unlabeled: bool = False,
) -> list[Document]:
    """Parse CoNLL text into documents.

    In strict mode a label outside ``schema.bio_labels`` raises
    :class:`ConllParseError`; lenient mode keeps it verbatim so it can be
    repaired later. With ``allow_unlabeled`` two-column lines get label ``O``.
    """
    schema = schema or LabelSchema()
    known = schema.label_index
    docs: list[Document] = []
    seen_ids: set[str] = set()
    cur_id: str | None = None
    cur_sents: list[Sentence] = []
    tokens: list[Token] = []
    lines: list[int] = []

    def close_sentence():
        if tokens:
            cur_sents.append(Sentence(tuple(tokens), tuple(lines)))
            tokens.clear()
            lines.clear()

    def close_document():
        close_sentence()
        if cur_id is not None or cur_sents:
            docs.append(Document(cur_id if cur_id is not None else DEFAULT_DOC_ID, tuple(cur_sents)))
        cur_sents.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            close_sentence()
            continue
        # A '#' line with exactly three columns is a token such as "#".
        if line.startswith("#") and line.count("\t") != 2:
            m = _DOC_HEADER.match(line)
            if m:
                close_document()
                cur_id = m.group(1)
                if cur_id in seen_ids:
                    raise ConllParseError(lineno, f"duplicate document id {cur_id!r}")
                seen_ids.add(cur_id)
            continue
        cols = line.split("\t")
        if len(cols) == 2 and allow_unlabeled:
            cols.append("O")
        if len(cols) != 3:
            raise ConllParseError(lineno, f"expected 3 tab-separated columns, found {len(cols)}")
        form, pos, label = cols
        if not form:
            raise ConllParseError(lineno, "empty token form")
        if strict and label not in known:
            raise ConllParseError(lineno, f"unknown label {label!r}")
        tokens.append(Token(form, pos, label))
        lines.append(lineno)

    close_document()
    return docs


def serialize_conll(docs: Sequence[Document]) -> str:
    """Inverse of :func:`parse_conll`; every document gets an explicit header."""
    out: list[str] = []
    for doc in docs:
        out.append(f"#doc id={doc.id}")
        for sent in doc.sentences:
            out.extend(f"{t.form}\t{t.pos}\t{t.label}" for t in sent.tokens)
            out.append("")
    return "\n".join(out) + "\n" if out else ""


def read_conll(path, schema: LabelSchema | None = None, strict: bool = True, **kw) -> list[Document]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_conll(fh.read(), schema, strict, **kw)


def write_conll(path, docs: Sequence[Document]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_conll(docs))


def iter_sentences(docs: Iterable[Document]):
    for doc in docs:
        yield from doc.sentences


def corpus_labels(docs: Iterable[Document]) -> list[str]:
    return [t.label for s in iter_sentences(docs) for t in s.tokens]
