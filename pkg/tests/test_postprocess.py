import random

import pytest

from stressner.bio import EntitySpan, bio_to_spans, repair_bio, validate_bio
from stressner.corpus import Sentence
from stressner.postprocess import (
    ChunkRuleConfig,
    fix_inconsistent,
    load_rules,
    parse_rules,
    pos_realign,
    run_pipeline,
)

POS_POOL = ["NOUN", "PROPN", "ADJ", "DET", "PUNCT", "VERB", "ADP", "CCONJ", "ADV", "NUM"]
LABELS = ["O", "B-X", "I-X", "B-Y", "I-Y"]


def sentence(pairs):
    forms, tags = zip(*(p.split("/") for p in pairs.split()))
    return Sentence.from_columns(list(forms), list(tags))


# hand-traced fixtures: (tokens, input labels, expected output of run_pipeline)
CASCADE_FIXTURES = [
    # orphan I- repaired to B-, then grown over the ADJ-NOUN-NOUN chunk
    (
        "severe/ADJ drought/NOUN stress/NOUN reduced/VERB yield/NOUN",
        ["O", "I-AbioticStress", "O", "O", "B-AgronomicResponse"],
        ["B-AbioticStress", "I-AbioticStress", "I-AbioticStress", "O", "B-AgronomicResponse"],
    ),
    # mismatch repair, H1 drops the CCONJ singleton, trim removes DET and PUNCT
    (
        "the/DET Fusarium/PROPN wilt/NOUN ,/PUNCT and/CCONJ aphids/NOUN",
        ["B-BioticStress", "I-BioticStress", "I-BioticStress", "I-BioticStress", "B-PlantSpecies", "I-BioticStress"],
        ["O", "B-BioticStress", "I-BioticStress", "O", "O", "B-BioticStress"],
    ),
    # H2 merges fragments across one NOUN, expansion then absorbs the ADJ
    (
        "low/ADJ leaf/NOUN water/NOUN potential/NOUN ./PUNCT",
        ["O", "B-PhysiologicalResponse", "O", "I-PhysiologicalResponse", "O"],
        ["B-PhysiologicalResponse", "I-PhysiologicalResponse", "I-PhysiologicalResponse", "I-PhysiologicalResponse", "O"],
    ),
]


@pytest.mark.parametrize("tokens, labels, expected", CASCADE_FIXTURES)
def test_cascade_fixtures(tokens, labels, expected):
    s = sentence(tokens)
    out = run_pipeline(s, labels)
    assert out == expected
    assert run_pipeline(s, out) == out


def test_expansion_over_chunk():
    s = sentence("severe/ADJ drought/NOUN stress/NOUN")
    assert pos_realign(s, [EntitySpan(1, 2, "AbioticStress")]) == [(0, 3, "AbioticStress")]


def test_trim():
    s = sentence("the/DET pathogen/NOUN")
    assert pos_realign(s, [EntitySpan(0, 2, "BioticStress")]) == [(1, 2, "BioticStress")]


def test_fixed_point_and_dropping():
    s = sentence("the/DET heat/NOUN stress/NOUN ./PUNCT")
    assert pos_realign(s, [EntitySpan(1, 3, "A")]) == [(1, 3, "A")]
    assert pos_realign(s, [EntitySpan(3, 4, "A")]) == []


def test_expansion_stops_at_neighbour():
    s = sentence("a/NOUN b/NOUN c/NOUN d/NOUN")
    out = pos_realign(s, [EntitySpan(0, 1, "X"), EntitySpan(3, 4, "Y")])
    assert out == [(0, 3, "X"), (3, 4, "Y")]


def test_overlap_rejected():
    with pytest.raises(ValueError):
        pos_realign(["NOUN"] * 3, [EntitySpan(0, 2, "X"), EntitySpan(1, 3, "X")])


def test_fix_inconsistent_examples():
    assert fix_inconsistent(["B-X"], ["PUNCT"]) == ["O"]
    assert fix_inconsistent(["B-X", "O", "I-X"], ["NOUN", "NOUN", "NOUN"]) == ["B-X", "I-X", "I-X"]
    ok = ["B-X", "I-X", "O", "B-Y"]
    assert fix_inconsistent(ok, ["NOUN", "NOUN", "VERB", "NOUN"]) == ok
    # gap token is not a chunk tag: no merge
    assert fix_inconsistent(["B-X", "O", "B-X"], ["NOUN", "VERB", "NOUN"]) == ["B-X", "O", "B-X"]


def test_all_o_is_fixed_point():
    s = sentence("a/DET b/NOUN c/VERB")
    assert run_pipeline(s, ["O"] * 3) == ["O"] * 3


def test_length_mismatch():
    with pytest.raises(ValueError):
        run_pipeline(sentence("a/NOUN"), ["O", "O"])


def test_rules_file(tmp_path):
    path = tmp_path / "rules.cfg"
    path.write_text("# comment\nchunk_pos = NOUN, ADJ\ntrim = false\n")
    cfg = load_rules(path)
    assert cfg.chunk_pos_set == {"NOUN", "ADJ"}
    assert not cfg.trim_enabled and cfg.expansion_enabled
    assert cfg.trim_pos_set == ChunkRuleConfig().trim_pos_set
    with pytest.raises(ValueError):
        parse_rules("chunk_pos = NOUN\ntrim_pos = NOUN\n")
    with pytest.raises(ValueError):
        parse_rules("bogus = 1\n")


def random_case(rng):
    n = rng.randint(1, 15)
    pos = [rng.choice(POS_POOL) for _ in range(n)]
    labels = [rng.choice(LABELS) for _ in range(n)]
    return Sentence.from_columns([f"w{i}" for i in range(n)], pos), labels


def test_pipeline_fuzz_validity_and_idempotence():
    rng = random.Random(11)
    for _ in range(3000):
        s, labels = random_case(rng)
        once = run_pipeline(s, labels)
        assert len(once) == len(labels)
        assert validate_bio(once) == []
        assert run_pipeline(s, once) == once


def test_expansion_only_contains_input():
    rng = random.Random(12)
    cfg = ChunkRuleConfig(trim_enabled=False)
    for _ in range(2000):
        s, labels = random_case(rng)
        spans = bio_to_spans(repair_bio(labels))
        out = pos_realign(s, spans, cfg)
        assert len(out) == len(spans)
        for before, after in zip(spans, out):
            assert after.start <= before.start and before.end <= after.end
        for a, b in zip(out, out[1:]):
            assert a.end <= b.start
