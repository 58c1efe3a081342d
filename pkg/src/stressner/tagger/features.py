"""Hashed lexical and POS context features."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..corpus import Sentence
from ..subword import AlignedSequence

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = (1 << 64) - 1

# template id -> name; ids prefix the hashed feature string as "<id>:<value>"
TEMPLATES = (
    "lower",
    "shape",
    "prefix1",
    "prefix2",
    "prefix3",
    "suffix1",
    "suffix2",
    "suffix3",
    "pos-1",
    "pos0",
    "pos+1",
    "lower-1",
    "lower+1",
    "bos",
    "eos",
)
BOS, EOS = "<s>", "</s>"


def fnv1a_64(data: bytes) -> int:
    h = FNV_OFFSET
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & MASK64
    return h


_SHAPE_RE = [(re.compile(r"[A-Z]+"), "X"), (re.compile(r"[a-z]+"), "x"), (re.compile(r"[0-9]+"), "d")]


def word_shape(word: str) -> str:
    """Collapsed character-class shape, e.g. ``Lens`` -> ``Xx``, ``H2O`` -> ``XdX``."""
    for pattern, repl in _SHAPE_RE:
        word = pattern.sub(repl, word)
    return word


def word_features(forms, pos_tags, i: int) -> list[str]:
    """Feature strings for word ``i``, template id first."""
    lower = forms[i].lower()
    n = len(forms)
    values = [
        lower,
        word_shape(forms[i]),
        lower[:1],
        lower[:2],
        lower[:3],
        lower[-1:],
        lower[-2:],
        lower[-3:],
        pos_tags[i - 1] if i > 0 else BOS,
        pos_tags[i],
        pos_tags[i + 1] if i + 1 < n else EOS,
        forms[i - 1].lower() if i > 0 else BOS,
        forms[i + 1].lower() if i + 1 < n else EOS,
    ]
    feats = [f"{tid}:{v}" for tid, v in enumerate(values)]
    if i == 0:
        feats.append("13:1")
    if i == n - 1:
        feats.append("14:1")
    return feats


@dataclass(frozen=True)
class FeatureSpec:
    hash_dimension: int = 1 << 18

    def __post_init__(self):
        d = self.hash_dimension
        if d < 1 or d & (d - 1):
            raise ValueError(f"hash_dimension must be a power of two, got {d}")

    def index(self, feature: str) -> int:
        return _hash_index(feature, self.hash_dimension)

    def sentence_features(self, sentence: Sentence) -> list[np.ndarray]:
        """Hashed feature indices for each word of ``sentence``."""
        forms, tags = sentence.forms, sentence.pos_tags
        return [
            np.array([self.index(f) for f in word_features(forms, tags, i)], dtype=np.int64)
            for i in range(len(forms))
        ]

    def piece_features(self, sentence: Sentence, aligned: AlignedSequence) -> list[np.ndarray]:
        """Each piece inherits the features of its source word."""
        per_word = self.sentence_features(sentence)
        return [per_word[w] for w in aligned.word_index]


@lru_cache(maxsize=1 << 20)
def _hash_index(feature: str, dim: int) -> int:
    return fnv1a_64(feature.encode("utf-8")) % dim
