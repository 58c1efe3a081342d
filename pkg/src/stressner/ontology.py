"""Dictionary-backed normalization of entity surfaces to ontology ids.

Lookup cascades through three indexes and the first hit wins:

* ``Exact``: the surface string as written;
* ``CaseFold``: ``str.casefold`` of the surface;
* ``Normalized``: case-folded, punctuation removed, whitespace collapsed.

A hit only counts if the entry's class equals the entity's class.
"""
from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Sequence

from .bio import EntitySpan
from .corpus import Document

EXACT = "Exact"
CASE_FOLD = "CaseFold"
NORMALIZED = "Normalized"
NO_MATCH = "None"

_WS = re.compile(r"\s+")


class DictionaryError(ValueError):
    pass


def casefold(surface: str) -> str:
    return surface.casefold()


def normalize_form(surface: str) -> str:
    folded = "".join(ch for ch in surface.casefold() if not unicodedata.category(ch).startswith("P"))
    return _WS.sub(" ", folded).strip()


@dataclass(frozen=True)
class OntologyEntry:
    surface: str
    canonical_id: str
    class_name: str


@dataclass
class OntologyDictionary:
    entries: list = field(default_factory=list)

    def __post_init__(self):
        self._exact: dict[str, list[OntologyEntry]] = {}
        self._folded: dict[str, list[OntologyEntry]] = {}
        self._normalized: dict[str, list[OntologyEntry]] = {}
        for entry in self.entries:
            self._exact.setdefault(entry.surface, []).append(entry)
            self._folded.setdefault(casefold(entry.surface), []).append(entry)
            self._normalized.setdefault(normalize_form(entry.surface), []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, surface: str, class_name: str) -> tuple[str | None, str]:
        """Return ``(canonical_id, tier)``; ``(None, "None")`` on a miss."""
        for tier, index, key in (
            (EXACT, self._exact, surface),
            (CASE_FOLD, self._folded, casefold(surface)),
            (NORMALIZED, self._normalized, normalize_form(surface)),
        ):
            for entry in index.get(key, ()):
                if entry.class_name == class_name:
                    return entry.canonical_id, tier
        return None, NO_MATCH


def parse_dictionary(text: str) -> OntologyDictionary:
    entries: list[OntologyEntry] = []
    first_seen: dict[str, tuple[int, str]] = {}
    seen: set[OntologyEntry] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3 or not all(c.strip() for c in cols):
            raise DictionaryError(f"line {lineno}: expected surface<TAB>canonical_id<TAB>class_name")
        surface, cid, cls = (c.strip() for c in cols)
        entry = OntologyEntry(surface, cid, cls)
        if entry in seen:
            continue
        prev = first_seen.get(surface)
        if prev is not None and prev[1] != cid:
            raise DictionaryError(
                f"line {lineno}: surface {surface!r} maps to {cid!r} but line {prev[0]} maps it to {prev[1]!r}"
            )
        first_seen.setdefault(surface, (lineno, cid))
        seen.add(entry)
        entries.append(entry)
    return OntologyDictionary(entries)


def load_dictionary(path) -> OntologyDictionary:
    with open(path, encoding="utf-8") as fh:
        return parse_dictionary(fh.read())


@dataclass(frozen=True)
class NormalizedEntity:
    span: EntitySpan
    surface: str
    canonical_id: str | None
    match_tier: str
    doc_id: str = ""
    sentence_index: int = 0

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sentence_index": self.sentence_index,
            "start": self.span.start,
            "end": self.span.end,
            "class": self.span.class_name,
            "surface": self.surface,
            "canonical_id": self.canonical_id,
            "match_tier": self.match_tier,
        }


def normalize_entity(surface: str, class_name: str, dictionary: OntologyDictionary) -> tuple[str | None, str]:
    return dictionary.lookup(surface, class_name)


def annotate_document(
    doc: Document,
    spans_per_sentence: Sequence[Sequence[EntitySpan]],
    dictionary: OntologyDictionary,
) -> list[NormalizedEntity]:
    if len(spans_per_sentence) != len(doc.sentences):
        raise ValueError(f"{len(spans_per_sentence)} span lists for {len(doc.sentences)} sentences")
    out = []
    for s_idx, (sent, spans) in enumerate(zip(doc.sentences, spans_per_sentence)):
        forms = sent.forms
        for span in spans:
            surface = " ".join(forms[span.start:span.end])
            cid, tier = dictionary.lookup(surface, span.class_name)
            out.append(NormalizedEntity(span, surface, cid, tier, doc.id, s_idx))
    return out


def entities_to_json(entities: Sequence[NormalizedEntity]) -> str:
    return json.dumps([e.to_dict() for e in entities], indent=2, ensure_ascii=False) + "\n"
