"""BIO-constrained Viterbi decoding over per-position label scores."""
from __future__ import annotations

import numpy as np

from ..corpus import LabelSchema


def allowed_transitions(schema: LabelSchema) -> tuple[np.ndarray, np.ndarray]:
    """Boolean start vector and ``[prev, next]`` transition mask.

    ``I-X`` may only follow ``B-X`` or ``I-X``; every other move is allowed.
    """
    labels = schema.bio_labels
    k = len(labels)
    start = np.array([not lab.startswith("I-") for lab in labels])
    trans = np.ones((k, k), dtype=bool)
    for j, nxt in enumerate(labels):
        if nxt.startswith("I-"):
            cls = nxt[2:]
            trans[:, j] = [prev in (f"B-{cls}", f"I-{cls}") for prev in labels]
    return start, trans


def viterbi_decode(emissions, schema: LabelSchema) -> list[str]:
    """Highest-scoring valid label sequence for a ``T x K`` score matrix.

    The path score is the sum of the chosen emissions. Ties go to the lower
    label index, both for the final label and for each back-pointer.
    """
    path, _ = viterbi_path(emissions, schema)
    labels = schema.bio_labels
    return [labels[i] for i in path]


def viterbi_path(emissions, schema: LabelSchema) -> tuple[list[int], float]:
    scores = np.asarray(emissions, dtype=np.float64)
    t_len, k = scores.shape if scores.ndim == 2 else (0, 0)
    if t_len == 0:
        return [], 0.0
    if k != len(schema.bio_labels):
        raise ValueError(f"emissions have {k} columns, schema has {len(schema.bio_labels)} labels")
    start, trans = allowed_transitions(schema)
    penalty = np.where(trans, 0.0, -np.inf)
    trellis = np.where(start, scores[0], -np.inf)
    back = np.zeros((t_len, k), dtype=np.int64)
    for t in range(1, t_len):
        cand = trellis[:, None] + penalty
        back[t] = np.argmax(cand, axis=0)
        trellis = cand[back[t], np.arange(k)] + scores[t]
    best = int(np.argmax(trellis))
    score = float(trellis[best])
    path = [best]
    for t in range(t_len - 1, 0, -1):
        path.append(int(back[t, path[-1]]))
    path.reverse()
    return path, score
