"""POS-aware span realignment and rule-based correction of predicted tags.

Rules run in a fixed order:

1. BIO repair (orphan and class-mismatched ``I-`` tags, unknown labels).
2. H1: a one-token entity whose POS is in ``trim_pos`` becomes ``O``.
3. H2: two same-class entities separated by exactly one ``O`` token whose
   POS is in ``chunk_pos`` are merged.
4. Expansion of each span over the run of ``chunk_pos`` tokens it sits in.
5. Trimming of ``trim_pos`` tokens from span edges.

Rule files are flat ``key = value`` text::

    chunk_pos = NOUN, PROPN, ADJ
    trim_pos = DET, PUNCT, VERB, ADP, CCONJ
    expansion = true
    trim = true
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from typing import Sequence

from .bio import EntitySpan, bio_to_spans, repair_bio, spans_to_bio
from .corpus import LabelSchema, Sentence


@dataclass(frozen=True)
class ChunkRuleConfig:
    chunk_pos_set: frozenset = frozenset({"NOUN", "PROPN", "ADJ"})
    trim_pos_set: frozenset = frozenset({"DET", "PUNCT", "VERB", "ADP", "CCONJ"})
    expansion_enabled: bool = True
    trim_enabled: bool = True

    def __post_init__(self):
        object.__setattr__(self, "chunk_pos_set", frozenset(self.chunk_pos_set))
        object.__setattr__(self, "trim_pos_set", frozenset(self.trim_pos_set))
        both = self.chunk_pos_set & self.trim_pos_set
        if both:
            raise ValueError(f"POS tags {sorted(both)} are in both the chunk and trim sets")


_KEYS = {"chunk_pos", "trim_pos", "expansion", "trim"}


def parse_rules(text: str) -> ChunkRuleConfig:
    parser = configparser.ConfigParser()
    parser.read_string("[rules]\n" + text)
    section = parser["rules"]
    unknown = set(section) - _KEYS
    if unknown:
        raise ValueError(f"unknown rule keys: {', '.join(sorted(unknown))}")
    default = ChunkRuleConfig()

    def tags(key, fallback):
        if key not in section:
            return fallback
        return frozenset(t.strip() for t in section[key].split(",") if t.strip())

    return ChunkRuleConfig(
        chunk_pos_set=tags("chunk_pos", default.chunk_pos_set),
        trim_pos_set=tags("trim_pos", default.trim_pos_set),
        expansion_enabled=section.getboolean("expansion", default.expansion_enabled),
        trim_enabled=section.getboolean("trim", default.trim_enabled),
    )


def load_rules(path) -> ChunkRuleConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read())


def _pos_tags(sentence) -> list[str]:
    return sentence.pos_tags if isinstance(sentence, Sentence) else list(sentence)


def pos_realign(sentence, spans: Sequence[EntitySpan], config: ChunkRuleConfig | None = None) -> list[EntitySpan]:
    """Expand spans over their noun chunk, then trim function words off the edges.

    ``sentence`` is a :class:`Sentence` or a plain list of POS tags. A span
    only grows through tokens that belong to no other span.
    """
    config = config or ChunkRuleConfig()
    pos = _pos_tags(sentence)
    n = len(pos)
    spans = sorted(spans)
    for a, b in zip(spans, spans[1:]):
        if b.start < a.end:
            raise ValueError(f"overlapping spans {tuple(a)} and {tuple(b)}")
    if spans and (spans[0].start < 0 or spans[-1].end > n):
        raise ValueError("span outside the sentence")

    chunk, trim = config.chunk_pos_set, config.trim_pos_set
    out = []
    for idx, span in enumerate(spans):
        start, end, cls = span
        if config.expansion_enabled:
            lo = out[-1].end if out else 0
            hi = spans[idx + 1].start if idx + 1 < len(spans) else n
            lo = max(lo, spans[idx - 1].end if idx else 0)
            while start > lo and pos[start] in chunk and pos[start - 1] in chunk:
                start -= 1
            while end < hi and pos[end - 1] in chunk and pos[end] in chunk:
                end += 1
        if config.trim_enabled:
            while start < end and pos[start] in trim:
                start += 1
            while end > start and pos[end - 1] in trim:
                end -= 1
        if start < end:
            out.append(EntitySpan(start, end, cls))
    return out


def fix_inconsistent(
    labels: Sequence[str],
    pos_tags: Sequence[str],
    schema: LabelSchema | None = None,
    config: ChunkRuleConfig | None = None,
) -> list[str]:
    """Repair, drop function-word singletons (H1), merge one-gap fragments (H2)."""
    config = config or ChunkRuleConfig()
    if len(labels) != len(pos_tags):
        raise ValueError(f"{len(labels)} labels for {len(pos_tags)} tokens")
    spans = bio_to_spans(repair_bio(labels, schema))
    spans = [s for s in spans if not (s.end - s.start == 1 and pos_tags[s.start] in config.trim_pos_set)]
    merged: list[EntitySpan] = []
    for span in spans:
        if merged:
            last = merged[-1]
            if (
                last.class_name == span.class_name
                and span.start == last.end + 1
                and pos_tags[last.end] in config.chunk_pos_set
            ):
                merged[-1] = EntitySpan(last.start, span.end, span.class_name)
                continue
        merged.append(span)
    return spans_to_bio(merged, len(labels))


def run_pipeline(
    sentence: Sentence,
    labels: Sequence[str],
    config: ChunkRuleConfig | None = None,
    schema: LabelSchema | None = None,
) -> list[str]:
    if len(labels) != len(sentence):
        raise ValueError(f"{len(labels)} labels for a sentence of {len(sentence)} tokens")
    pos = sentence.pos_tags
    fixed = fix_inconsistent(labels, pos, schema, config)
    spans = pos_realign(pos, bio_to_spans(fixed), config)
    return spans_to_bio(spans, len(labels))
