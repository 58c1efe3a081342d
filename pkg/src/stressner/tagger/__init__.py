from .features import FeatureSpec, fnv1a_64, word_features, word_shape
from .loss import ClassWeights, class_weights_from_counts, compute_class_weights, weighted_ce_loss
from .model import (
    SchemaMismatchError,
    TaggerModel,
    TrainConfig,
    held_out_split,
    loss_log,
    predict,
    predict_corpus,
    train,
)
from .rng import SplitMix64
from .viterbi import allowed_transitions, viterbi_decode, viterbi_path

__all__ = [
    "ClassWeights",
    "FeatureSpec",
    "SchemaMismatchError",
    "SplitMix64",
    "TaggerModel",
    "TrainConfig",
    "allowed_transitions",
    "class_weights_from_counts",
    "compute_class_weights",
    "fnv1a_64",
    "held_out_split",
    "loss_log",
    "predict",
    "predict_corpus",
    "train",
    "viterbi_decode",
    "viterbi_path",
    "weighted_ce_loss",
    "word_features",
    "word_shape",
]
