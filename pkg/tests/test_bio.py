import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stressner.bio import (
    CLASS_MISMATCH_I,
    ORPHAN_I,
    UNKNOWN_LABEL,
    EntitySpan,
    InvalidBioError,
    bio_to_spans,
    repair_bio,
    spans_to_bio,
    validate_bio,
)
from stressner.corpus import LabelSchema

SCHEMA = LabelSchema()


def kinds(labels, schema=SCHEMA):
    return [(v.position, v.kind) for v in validate_bio(labels, schema)]


def test_validate_examples():
    assert kinds(["B-AbioticStress", "I-AbioticStress", "O"]) == []
    assert kinds(["O", "I-PlantSpecies"]) == [(1, ORPHAN_I)]
    assert kinds(["B-AbioticStress", "I-BioticStress"]) == [(1, CLASS_MISMATCH_I)]
    assert kinds(["I-PlantSpecies"]) == [(0, ORPHAN_I)]
    assert kinds(["B-Nope", "O", "garbage"]) == [(0, UNKNOWN_LABEL), (2, UNKNOWN_LABEL)]


def test_repair_examples():
    assert repair_bio(["O", "I-PlantSpecies", "I-PlantSpecies"], SCHEMA) == ["O", "B-PlantSpecies", "I-PlantSpecies"]
    assert repair_bio(["B-AbioticStress", "I-BioticStress"], SCHEMA) == ["B-AbioticStress", "B-BioticStress"]
    valid = ["B-PlantSpecies", "I-PlantSpecies", "O", "B-AbioticStress"]
    assert repair_bio(valid, SCHEMA) == valid
    assert repair_bio(["B-Nope", "I-Nope"], SCHEMA) == ["O", "O"]


def test_repair_continue_mode():
    out = repair_bio(["B-AbioticStress", "I-BioticStress", "I-BioticStress"], SCHEMA, mismatch="continue")
    assert out == ["B-AbioticStress", "I-AbioticStress", "I-AbioticStress"]
    assert validate_bio(out, SCHEMA) == []


def test_bio_to_spans_examples():
    assert bio_to_spans(["B-X", "I-X", "O", "B-Y"]) == [(0, 2, "X"), (3, 4, "Y")]
    assert bio_to_spans(["O", "O"]) == []
    assert bio_to_spans(["B-X", "B-X"]) == [(0, 1, "X"), (1, 2, "X")]
    assert bio_to_spans([]) == []


@pytest.mark.parametrize("bad", [["I-X"], ["O", "I-X"], ["B-X", "I-Y"], ["Z"]])
def test_bio_to_spans_rejects_invalid(bad):
    with pytest.raises(InvalidBioError, match="repair"):
        bio_to_spans(bad)


def test_spans_to_bio_examples():
    assert spans_to_bio([], 3) == ["O", "O", "O"]
    assert spans_to_bio([EntitySpan(0, 2, "X")], 2) == ["B-X", "I-X"]
    with pytest.raises(ValueError):
        spans_to_bio([EntitySpan(0, 2, "X"), EntitySpan(1, 3, "Y")], 3)
    with pytest.raises(ValueError):
        spans_to_bio([EntitySpan(2, 4, "X")], 3)


def random_spans(rng, n, classes):
    spans, pos = [], 0
    while pos < n:
        if rng.random() < 0.4:
            length = rng.randint(1, min(4, n - pos))
            spans.append(EntitySpan(pos, pos + length, rng.choice(classes)))
            pos += length
        else:
            pos += 1
    return spans


def test_span_round_trip_random():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(0, 20)
        spans = random_spans(rng, n, ["X", "Y", "Z"])
        labels = spans_to_bio(spans, n)
        assert bio_to_spans(labels) == spans
        assert spans_to_bio(bio_to_spans(labels), n) == labels


_any_label = st.sampled_from(list(SCHEMA.bio_labels) + ["B-Bogus", "I-Bogus", "junk"])


@settings(max_examples=500, deadline=None)
@given(st.lists(_any_label, max_size=30))
def test_repair_properties(labels):
    fixed = repair_bio(labels, SCHEMA)
    assert len(fixed) == len(labels)
    assert validate_bio(fixed, SCHEMA) == []
    assert repair_bio(fixed, SCHEMA) == fixed
    # every non-O token is covered by exactly one span
    spans = bio_to_spans(fixed)
    covered = [i for s in spans for i in range(s.start, s.end)]
    assert covered == [i for i, lab in enumerate(fixed) if lab != "O"]
