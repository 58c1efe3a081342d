"""Sequence-labeling toolkit for plant stress-response named entity recognition."""
from .bio import BioViolation, EntitySpan, InvalidBioError, bio_to_spans, repair_bio, spans_to_bio, validate_bio
from .corpus import (
    DEFAULT_CLASSES,
    ConllParseError,
    Document,
    LabelSchema,
    Sentence,
    Token,
    parse_conll,
    read_conll,
    serialize_conll,
    write_conll,
)

__version__ = "0.1.0"
