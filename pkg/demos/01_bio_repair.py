# BIO validation, repair and span decoding on a hand-made sentence
from stressner import LabelSchema, bio_to_spans, repair_bio, validate_bio

schema = LabelSchema()  # the seven stress-response classes
labels = ["O", "I-AbioticStress", "I-AbioticStress", "O", "B-PlantSpecies", "I-BioticStress", "B-Nonsense"]

for v in validate_bio(labels, schema):  # one violation per offending position
    print(v.position, v.kind, v.detail)

fixed = repair_bio(labels, schema)  # orphan I- becomes B-, mismatched I- starts a new entity, unknown becomes O
print(fixed)
print(repair_bio(fixed, schema) == fixed)  # repair is idempotent
print(repair_bio(labels, schema, mismatch="continue"))  # alternative policy: keep the running entity

for span in bio_to_spans(fixed):  # half-open token ranges
    print(span.start, span.end, span.class_name)
