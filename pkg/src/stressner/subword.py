"""Greedy longest-match subword segmentation and word/subword label alignment."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bio import repair_bio, validate_bio
from .corpus import LabelSchema, Sentence


@dataclass(frozen=True)
class SubwordVocab:
    pieces: frozenset
    continuation_marker: str = "##"
    unknown_piece: str = "[UNK]"
    max_piece_len: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pieces", frozenset(self.pieces))
        m = len(self.continuation_marker)
        longest = max(
            (len(p) - m if p.startswith(self.continuation_marker) and m else len(p) for p in self.pieces),
            default=1,
        )
        object.__setattr__(self, "max_piece_len", max(longest, 1))

    @classmethod
    def build(cls, pieces: Iterable[str], alphabet: Iterable[str] = (), **kw) -> "SubwordVocab":
        """Vocabulary from ``pieces`` plus every character of ``alphabet`` in
        both initial and continuation form, so segmentation never needs the
        unknown piece for those characters."""
        marker = kw.get("continuation_marker", "##")
        chars = set(alphabet)
        return cls(frozenset(pieces) | chars | {marker + c for c in chars}, **kw)

    def covers(self, ch: str) -> bool:
        return ch in self.pieces or self.continuation_marker + ch in self.pieces

    def to_text(self) -> str:
        return "".join(p + "\n" for p in sorted(self.pieces))


def load_vocab(path, **kw) -> SubwordVocab:
    """Read a vocab file: one piece per line, continuation pieces carry the marker."""
    with open(path, encoding="utf-8") as fh:
        pieces = [line.rstrip("\r\n") for line in fh]
    return SubwordVocab(frozenset(p for p in pieces if p), **kw)


@dataclass(frozen=True)
class AlignedSequence:
    pieces: tuple[str, ...]
    labels: tuple[str, ...]
    supervision_mask: tuple[bool, ...]
    word_index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.pieces)

    @property
    def n_words(self) -> int:
        return self.word_index[-1] + 1 if self.word_index else 0


def segment(word: str, vocab: SubwordVocab) -> list[str]:
    if not word:
        raise ValueError("cannot segment an empty word")
    marker = vocab.continuation_marker
    pieces = vocab.pieces
    out = []
    start, n = 0, len(word)
    while start < n:
        prefix = marker if start else ""
        end = min(n, start + vocab.max_piece_len)
        while end > start and prefix + word[start:end] not in pieces:
            end -= 1
        if end > start:
            out.append(prefix + word[start:end])
            start = end
            continue
        ch = word[start]
        # character covered only in its other (initial/continuation) form
        out.append(prefix + (ch if vocab.covers(ch) else vocab.unknown_piece))
        start += 1
    return out


def join_pieces(pieces: Sequence[str], vocab: SubwordVocab) -> str:
    """Rebuild a word from its segmentation (inverse of :func:`segment`)."""
    m = len(vocab.continuation_marker)
    return "".join([pieces[0], *(p[m:] for p in pieces[1:])]) if pieces else ""


def align_labels(sentence: Sentence, vocab: SubwordVocab) -> AlignedSequence:
    labels = sentence.labels
    bad = validate_bio(labels)
    if bad:
        raise ValueError(f"sentence labels are not valid BIO: {bad[0]}")
    pieces, plabels, mask, widx = [], [], [], []
    for w, (token, label) in enumerate(zip(sentence.tokens, labels)):
        cont = "O" if label == "O" else "I-" + label[2:]
        for j, piece in enumerate(segment(token.form, vocab)):
            pieces.append(piece)
            plabels.append(label if j == 0 else cont)
            mask.append(j == 0)
            widx.append(w)
    return AlignedSequence(tuple(pieces), tuple(plabels), tuple(mask), tuple(widx))


def word_starts(aligned: AlignedSequence) -> list[int]:
    """Index of the first piece of each word."""
    return [i for i, w in enumerate(aligned.word_index) if i == 0 or aligned.word_index[i - 1] != w]


def project_to_words(
    aligned: AlignedSequence,
    predicted: Sequence[str],
    schema: LabelSchema | None = None,
) -> list[str]:
    """Word labels taken from each word's first piece, then BIO-repaired."""
    if len(predicted) != len(aligned):
        raise ValueError(f"{len(predicted)} predictions for {len(aligned)} pieces")
    return repair_bio([predicted[i] for i in word_starts(aligned)], schema)
