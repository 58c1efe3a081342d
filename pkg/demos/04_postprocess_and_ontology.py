# POS-aware clean-up of predicted labels, then dictionary normalization of the spans
from stressner.bio import bio_to_spans
from stressner.corpus import Document, Sentence
from stressner.ontology import annotate_document, entities_to_json, load_dictionary
from stressner.postprocess import ChunkRuleConfig, fix_inconsistent, pos_realign, run_pipeline
from stressner.synthetic import bundled_path

forms = ["the", "severe", "drought", "stress", "reduced", "Lens", "culinaris", "yield", "."]
tags = ["DET", "ADJ", "NOUN", "NOUN", "VERB", "PROPN", "PROPN", "NOUN", "PUNCT"]
raw = ["B-AbioticStress", "O", "I-AbioticStress", "O", "O", "B-PlantSpecies", "I-PlantSpecies",
       "B-AgronomicResponse", "I-AgronomicResponse"]
sent = Sentence.from_columns(forms, tags)

step1 = fix_inconsistent(raw, tags)  # repair, drop singletons on non-chunk tags, merge fragments
print(step1)
spans = pos_realign(sent, bio_to_spans(step1))  # grow over noun chunks, trim edge function words
print(spans)

labels = run_pipeline(sent, raw)  # the whole cascade in one call
print(labels, run_pipeline(sent, labels) == labels)  # and it is a fixed point

no_trim = ChunkRuleConfig(trim_enabled=False)
print(run_pipeline(sent, raw, no_trim))

dictionary = load_dictionary(bundled_path("ontology_sample.tsv"))
doc = Document("demo", (sent.with_labels(labels),))
entities = annotate_document(doc, [bio_to_spans(labels)], dictionary)
print(entities_to_json(entities))  # canonical id plus the tier that matched, or None
