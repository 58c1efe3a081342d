# Train the hashed-feature tagger on the bundled separable corpus and score a held-out split
import time

from stressner import LabelSchema
from stressner.metrics import compare_reports, entity_metrics_from_docs, render_comparison, token_metrics
from stressner.subword import load_vocab
from stressner.synthetic import bundled_path, load_bundled
from stressner.tagger import TrainConfig, held_out_split, predict_corpus, train

schema = LabelSchema()
vocab = load_vocab(bundled_path("vocab.txt"))
train_docs, test_docs = held_out_split(load_bundled("separable.conll"), 0.2)  # trailing 20% held out

t0 = time.perf_counter()
model = train(train_docs, schema, vocab, TrainConfig(epochs=10))  # o_factor 0.1 down-weights O
print(f"trained in {time.perf_counter() - t0:.1f} s")
print([round(x, 4) for x in model.epoch_losses])  # mean weighted loss per epoch

pred = predict_corpus(model, test_docs)
print(token_metrics(test_docs, pred, include_o=False, schema=schema).table())
entity = entity_metrics_from_docs(test_docs, pred, schema)
print("entity micro F1", round(entity.micro_f1, 4))

# same data, no O down-weighting: how do the token metrics move?
flat = train(train_docs, schema, vocab, TrainConfig(epochs=10, o_factor=1.0))
a = token_metrics(test_docs, predict_corpus(flat, test_docs), schema=schema)
b = token_metrics(test_docs, pred, schema=schema)
print(render_comparison(compare_reports(a, b)))  # deltas are (o=0.1) minus (o=1.0)
