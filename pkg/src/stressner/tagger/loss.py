"""Inverse-frequency class weights and the weighted cross-entropy loss."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..corpus import Document, LabelSchema, corpus_labels


@dataclass(frozen=True)
class ClassWeights:
    """Per-label loss weights.

    ``base`` holds ``N_total / (K * n_c)``; the effective weight of ``O`` is
    its base weight times ``o_factor``.
    """

    base: Mapping[str, float]
    o_factor: float = 1.0
    counts: Mapping[str, int] | None = None

    def __post_init__(self):
        if self.o_factor <= 0:
            raise ValueError("o_factor must be positive")
        if any(not w > 0 for w in self.base.values()):
            raise ValueError("class weights must be positive")

    @property
    def weights(self) -> dict[str, float]:
        out = dict(self.base)
        if "O" in out:
            out["O"] *= self.o_factor
        return out

    def vector(self, schema: LabelSchema) -> np.ndarray:
        w = self.weights
        return np.array([w[label] for label in schema.bio_labels], dtype=np.float64)


def class_weights_from_counts(
    counts: Mapping[str, int], schema: LabelSchema, o_factor: float = 0.1
) -> ClassWeights:
    """Absent labels are smoothed to a count of one."""
    labels = schema.bio_labels
    n = {label: max(int(counts.get(label, 0)), 1) for label in labels}
    total = sum(n.values())
    k = len(labels)
    base = {label: total / (k * n[label]) for label in labels}
    return ClassWeights(base, o_factor, n)


def compute_class_weights(
    corpus: Sequence[Document], schema: LabelSchema, o_factor: float = 0.1
) -> ClassWeights:
    labels = corpus_labels(corpus)
    if not labels:
        raise ValueError("cannot compute class weights from an empty corpus")
    return class_weights_from_counts(Counter(labels), schema, o_factor)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=-1, keepdims=True))


def weighted_ce_loss(logits, gold: int, weights=1.0, supervised: bool = True):
    """Weighted cross-entropy at one position.

    ``weights`` is either a scalar weight for the gold label or a per-label
    weight vector indexed by ``gold``. Returns ``(loss, gradient)`` with the
    gradient taken with respect to ``logits``; unsupervised positions give
    zero for both.
    """
    logits = np.asarray(logits, dtype=np.float64)
    if not supervised:
        return 0.0, np.zeros_like(logits)
    w = float(weights[gold]) if np.ndim(weights) else float(weights)
    logp = log_softmax(logits)
    grad = np.exp(logp)
    grad[gold] -= 1.0
    return -w * float(logp[gold]), w * grad
