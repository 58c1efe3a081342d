"""Log-linear subword tagger: training, decoding and the model file format.

Model file (UTF-8 text, LF line endings)::

    stressner-tagger<TAB>1
    <key><TAB><value>            metadata, one per line
    vocab<TAB><n>                followed by n piece lines
    bias<TAB><K space-separated floats>
    row<TAB><label><TAB><nnz>    one block per label in schema order,
    <column><TAB><value>         followed by its nonzero entries by column
    end

Floats are written with ``repr`` so reading them back is bit-exact.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..bio import repair_bio, validate_bio
from ..corpus import Document, LabelSchema, Sentence, iter_sentences
from ..subword import SubwordVocab, align_labels, project_to_words
from .features import FeatureSpec
from .loss import compute_class_weights, log_softmax, weighted_ce_loss
from .rng import SplitMix64
from .viterbi import viterbi_decode

logger = logging.getLogger(__name__)

FORMAT_NAME = "stressner-tagger"
FORMAT_VERSION = 1


class SchemaMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 20
    learning_rate: float = 0.1
    decay: float = 0.1
    seed: int = 13
    o_factor: float = 0.1
    hash_dimension: int = 1 << 18
    # train on continuation pieces too (their aligned label is I-X or O)
    supervise_continuations: bool = False

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if self.decay < 0:
            raise ValueError("decay must be non-negative")
        if not self.o_factor > 0:
            raise ValueError("o_factor must be positive")

    def learning_rate_at(self, epoch: int) -> float:
        return self.learning_rate / (1.0 + self.decay * epoch)


@dataclass
class TaggerModel:
    schema: LabelSchema
    feature_spec: FeatureSpec
    vocab: SubwordVocab
    weights: np.ndarray  # (labels, hash_dimension)
    bias: np.ndarray
    config: TrainConfig = field(default_factory=TrainConfig)
    epoch_losses: list = field(default_factory=list)

    def logits(self, feats: np.ndarray) -> np.ndarray:
        return self.weights[:, feats].sum(axis=1) + self.bias

    def emissions(self, sentence: Sentence):
        """Log-probabilities per piece plus the alignment they belong to.

        Unless the model was trained on continuation pieces, those get an
        all-zero row so they never influence the decoded labels of
        word-initial pieces.
        """
        aligned = align_labels(sentence.with_labels(["O"] * len(sentence)), self.vocab)
        feats = self.feature_spec.piece_features(sentence, aligned)
        em = np.zeros((len(aligned), len(self.schema.bio_labels)))
        for i, (f, sup) in enumerate(zip(feats, aligned.supervision_mask)):
            if sup or self.config.supervise_continuations:
                em[i] = log_softmax(self.logits(f))
        return em, aligned

    def to_text(self) -> str:
        return dump_model(self)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dump_model(self))

    @classmethod
    def load(cls, path) -> "TaggerModel":
        with open(path, encoding="utf-8") as fh:
            return parse_model(fh.read())


def _training_examples(sentence: Sentence, vocab: SubwordVocab, spec: FeatureSpec, index: dict, all_pieces: bool):
    aligned = align_labels(sentence, vocab)
    feats = spec.piece_features(sentence, aligned)
    return [
        (f, index[label])
        for f, label, sup in zip(feats, aligned.labels, aligned.supervision_mask)
        if sup or all_pieces
    ]


def train(
    corpus: Sequence[Document],
    schema: LabelSchema,
    vocab: SubwordVocab,
    config: TrainConfig | None = None,
) -> TaggerModel:
    """Per-position SGD on the class-weighted cross-entropy.

    Sentences are reshuffled every epoch with :class:`SplitMix64` seeded by
    ``config.seed``; epoch ``e`` (from 0) uses ``lr / (1 + decay * e)``.
    """
    config = config or TrainConfig()
    sentences = list(iter_sentences(corpus))
    if not sentences:
        raise ValueError("cannot train on an empty corpus")
    for n, sent in enumerate(sentences):
        bad = validate_bio(sent.labels, schema)
        if bad:
            raise ValueError(f"sentence {n}: {bad[0].kind} at token {bad[0].position}: {bad[0].detail}")

    spec = FeatureSpec(config.hash_dimension)
    index = schema.label_index
    class_w = compute_class_weights(corpus, schema, config.o_factor).vector(schema)
    examples = [
        _training_examples(s, vocab, spec, index, config.supervise_continuations) for s in sentences
    ]
    n_positions = sum(len(ex) for ex in examples)

    k = len(schema.bio_labels)
    wt = np.zeros((spec.hash_dimension, k))  # feature-major while training
    bias = np.zeros(k)
    rng = SplitMix64(config.seed)
    order = list(range(len(examples)))
    losses = []
    for epoch in range(config.epochs):
        lr = config.learning_rate_at(epoch)
        rng.shuffle(order)
        total = 0.0
        for s in order:
            for feats, gold in examples[s]:
                logits = wt[feats].sum(axis=0) + bias
                loss, grad = weighted_ce_loss(logits, gold, class_w)
                total += loss
                step = lr * grad
                np.subtract.at(wt, feats, step)
                bias -= step
        losses.append(total / n_positions)
        logger.info("epoch %d loss %.6f", epoch + 1, losses[-1])

    return TaggerModel(
        schema=schema,
        feature_spec=spec,
        vocab=vocab,
        weights=np.ascontiguousarray(wt.T),
        bias=bias,
        config=config,
        epoch_losses=losses,
    )


def predict(model: TaggerModel, sentence: Sentence, vocab: SubwordVocab | None = None,
            schema: LabelSchema | None = None) -> list[str]:
    """Segment, score, decode under BIO constraints and project back to words."""
    if schema is not None and schema != model.schema:
        raise SchemaMismatchError(f"model classes {model.schema.entity_classes} != {schema.entity_classes}")
    known = model.schema.label_index
    for label in sentence.labels:
        if label not in known:
            raise SchemaMismatchError(f"label {label!r} is not in the model schema")
    if vocab is not None and vocab != model.vocab:
        model = TaggerModel(model.schema, model.feature_spec, vocab, model.weights, model.bias, model.config)
    em, aligned = model.emissions(sentence)
    piece_labels = viterbi_decode(em, model.schema)
    return repair_bio(project_to_words(aligned, piece_labels, model.schema), model.schema)


def predict_corpus(model: TaggerModel, corpus: Sequence[Document]) -> list[Document]:
    return [
        Document(doc.id, tuple(s.with_labels(predict(model, s)) for s in doc.sentences))
        for doc in corpus
    ]


def loss_log(model: TaggerModel) -> str:
    return "".join(f"{e}\t{loss!r}\n" for e, loss in enumerate(model.epoch_losses, start=1))


def dump_model(model: TaggerModel) -> str:
    cfg = model.config
    meta = [
        ("classes", ",".join(model.schema.entity_classes)),
        ("hash_dimension", model.feature_spec.hash_dimension),
        ("seed", cfg.seed),
        ("epochs", cfg.epochs),
        ("learning_rate", repr(cfg.learning_rate)),
        ("decay", repr(cfg.decay)),
        ("o_factor", repr(cfg.o_factor)),
        ("supervise_continuations", int(cfg.supervise_continuations)),
        ("epoch_losses", ",".join(repr(float(x)) for x in model.epoch_losses)),
        ("continuation_marker", model.vocab.continuation_marker),
        ("unknown_piece", model.vocab.unknown_piece),
    ]
    out = [f"{FORMAT_NAME}\t{FORMAT_VERSION}"]
    out += [f"{key}\t{value}" for key, value in meta]
    pieces = sorted(model.vocab.pieces)
    out.append(f"vocab\t{len(pieces)}")
    out += pieces
    out.append("bias\t" + " ".join(repr(float(b)) for b in model.bias))
    for label, row in zip(model.schema.bio_labels, model.weights):
        # signbit keeps -0.0 so the round trip is bit-exact
        cols = np.flatnonzero((row != 0) | np.signbit(row))
        out.append(f"row\t{label}\t{len(cols)}")
        out += [f"{c}\t{float(row[c])!r}" for c in cols]
    out.append("end")
    return "\n".join(out) + "\n"


def parse_model(text: str) -> TaggerModel:
    lines = text.split("\n")
    head = lines[0].split("\t")
    if head[0] != FORMAT_NAME:
        raise ValueError("not a stressner tagger model file")
    if int(head[1]) != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {head[1]}")
    meta = {}
    pos = 1
    while not lines[pos].startswith("vocab\t"):
        key, _, value = lines[pos].partition("\t")
        meta[key] = value
        pos += 1
    n_pieces = int(lines[pos].split("\t")[1])
    pieces = lines[pos + 1: pos + 1 + n_pieces]
    pos += 1 + n_pieces

    schema = LabelSchema(tuple(c for c in meta["classes"].split(",") if c))
    spec = FeatureSpec(int(meta["hash_dimension"]))
    vocab = SubwordVocab(frozenset(pieces), meta["continuation_marker"], meta["unknown_piece"])
    losses = [float(x) for x in meta["epoch_losses"].split(",") if x]
    config = TrainConfig(
        epochs=int(meta["epochs"]),
        learning_rate=float(meta["learning_rate"]),
        decay=float(meta["decay"]),
        seed=int(meta["seed"]),
        o_factor=float(meta["o_factor"]),
        hash_dimension=spec.hash_dimension,
        supervise_continuations=meta.get("supervise_continuations", "0") == "1",
    )
    k = len(schema.bio_labels)
    bias = np.array([float(x) for x in lines[pos].split("\t")[1].split()])
    pos += 1
    weights = np.zeros((k, spec.hash_dimension))
    for r, label in enumerate(schema.bio_labels):
        tag, row_label, nnz = lines[pos].split("\t")
        if tag != "row" or row_label != label:
            raise ValueError(f"expected row for {label!r}, found {lines[pos]!r}")
        for line in lines[pos + 1: pos + 1 + int(nnz)]:
            col, value = line.split("\t")
            weights[r, int(col)] = float(value)
        pos += 1 + int(nnz)
    if lines[pos] != "end":
        raise ValueError("model file is truncated")
    if not (np.isfinite(weights).all() and np.isfinite(bias).all()):
        raise ValueError("model contains non-finite weights")
    return TaggerModel(schema, spec, vocab, weights, bias, config, losses)


def held_out_split(corpus: Sequence[Document], fraction: float = 0.2):
    """Split sentences into leading train and trailing held-out documents."""
    sentences = list(iter_sentences(corpus))
    n_test = int(math.ceil(len(sentences) * fraction))
    cut = len(sentences) - n_test
    return [Document("train", tuple(sentences[:cut]))], [Document("heldout", tuple(sentences[cut:]))]
