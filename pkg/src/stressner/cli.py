"""Command-line interface.

Exit codes: 0 success, 1 validation violations found, 2 usage or parse
error, 3 runtime error (unreadable files, mismatched inputs, empty corpus).
Output files are written to a temporary sibling and renamed on success.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import agreement, metrics
from .bio import bio_to_spans, repair_bio, validate_bio
from .corpus import ConllParseError, Document, LabelSchema, iter_sentences, parse_conll, serialize_conll
from .ontology import annotate_document, entities_to_json, load_dictionary
from .postprocess import ChunkRuleConfig, load_rules, run_pipeline
from .subword import load_vocab
from .tagger import SchemaMismatchError, TaggerModel, TrainConfig, loss_log, predict, train

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_RUNTIME):
        super().__init__(message)
        self.code = code


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _read_corpus(path: str, schema: LabelSchema, strict: bool = True, **kw) -> list[Document]:
    text = _read_text(path)
    try:
        return parse_conll(text, schema, strict, **kw)
    except ConllParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from exc


def _schema(args) -> LabelSchema:
    if getattr(args, "classes", None):
        return LabelSchema(tuple(c.strip() for c in args.classes.split(",") if c.strip()))
    return LabelSchema()


def _emit(text: str, path: str | None) -> None:
    if path == "-":
        sys.stdout.write(text)
    elif path:
        atomic_write(path, text)


def cmd_validate(args) -> int:
    schema = _schema(args)
    found = 0
    for path in args.corpus:
        for sent in iter_sentences(_read_corpus(path, schema, strict=False)):
            for v in validate_bio(sent.labels, schema):
                print(f"{path}:{sent.lines[v.position]}: {v.kind} {v.detail}")
                found += 1
    return EXIT_VIOLATIONS if found else EXIT_OK


def cmd_repair(args) -> int:
    schema = _schema(args)
    docs = _read_corpus(args.input, schema, strict=False)
    fixed = [
        Document(d.id, tuple(s.with_labels(repair_bio(s.labels, schema, args.mismatch)) for s in d.sentences))
        for d in docs
    ]
    atomic_write(args.output, serialize_conll(fixed))
    return EXIT_OK


def _check_streams(corpora, paths) -> None:
    ref = [s.forms for s in iter_sentences(corpora[0])]
    for other, path in zip(corpora[1:], paths[1:]):
        sents = [s.forms for s in iter_sentences(other)]
        for i, (a, b) in enumerate(zip(ref, sents)):
            if a != b:
                tok = next((j for j, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
                raise CliError(f"{path}: token stream diverges from {paths[0]} at sentence {i}, token {tok}")
        if len(ref) != len(sents):
            raise CliError(f"{path}: {len(sents)} sentences, {paths[0]} has {len(ref)}")


def cmd_iaa(args) -> int:
    schema = _schema(args)
    if len(args.files) < 2:
        raise CliError("iaa needs at least two annotation files", EXIT_USAGE)
    corpora = [_read_corpus(p, schema) for p in args.files]
    _check_streams(corpora, args.files)
    annotations = [[lab for s in iter_sentences(c) for lab in s.labels] for c in corpora]
    if args.unit == "class":
        annotations = [agreement.class_units(a) for a in annotations]
        categories = ["O", *schema.entity_classes]
    else:
        categories = list(schema.bio_labels)
    try:
        rep = agreement.pairwise_iaa(annotations, categories, names=args.files)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(f"{'pair':40s} {'P0':>7s} {'Pe':>7s} {'kappa':>7s} {'G':>7s}")
    for (a, b), r in rep.pairs:
        print(f"{(a + ' / ' + b)[:40]:40s} {r.p0:7.4f} {r.pe:7.4f} {r.kappa:7.4f} {r.g_index:7.4f}")
    print(f"{'mean':40s} {rep.p0:7.4f} {rep.pe:7.4f} {rep.kappa:7.4f} {rep.g_index:7.4f}  (k={rep.k})")
    _emit(json.dumps(rep.to_dict(), indent=2) + "\n", args.json)
    return EXIT_OK


def cmd_train(args) -> int:
    schema = _schema(args)
    try:
        config = TrainConfig(
            epochs=args.epochs,
            learning_rate=args.lr,
            decay=args.decay,
            seed=args.seed,
            o_factor=args.o_weight,
            hash_dimension=1 << args.hash_bits,
            supervise_continuations=args.supervise_continuations,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    docs = _read_corpus(args.corpus, schema)
    try:
        vocab = load_vocab(args.vocab)
    except OSError as exc:
        raise CliError(f"cannot read {args.vocab}: {exc}") from exc
    if not any(True for _ in iter_sentences(docs)):
        raise CliError(f"{args.corpus}: corpus is empty")
    try:
        model = train(docs, schema, vocab, config)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    log = loss_log(model)
    atomic_write(args.model_out, model.to_text())
    if args.loss_log:
        atomic_write(args.loss_log, log)
    sys.stdout.write(log)
    return EXIT_OK


def cmd_predict(args) -> int:
    rules = ChunkRuleConfig()
    if args.rules:
        try:
            rules = load_rules(args.rules)
        except OSError as exc:
            raise CliError(f"cannot read {args.rules}: {exc}") from exc
        except ValueError as exc:
            raise CliError(f"{args.rules}: {exc}", EXIT_USAGE) from exc
    dictionary = None
    if args.ontology:
        try:
            dictionary = load_dictionary(args.ontology)
        except OSError as exc:
            raise CliError(f"cannot read {args.ontology}: {exc}") from exc
        except ValueError as exc:
            raise CliError(f"{args.ontology}: {exc}", EXIT_USAGE) from exc
    try:
        model = TaggerModel.load(args.model)
    except OSError as exc:
        raise CliError(f"cannot read model {args.model}: {exc}") from exc
    except (ValueError, KeyError, IndexError) as exc:
        raise CliError(f"{args.model}: not a valid model file ({exc})") from exc

    docs = _read_corpus(args.input, model.schema, strict=False, allow_unlabeled=True)
    out_docs, entities = [], []
    for doc in docs:
        sents = []
        for sent in doc.sentences:
            try:
                labels = predict(model, sent)
            except SchemaMismatchError as exc:
                raise CliError(f"{args.input}: schema mismatch with model: {exc}") from exc
            if args.postprocess:
                labels = run_pipeline(sent, labels, rules, model.schema)
            sents.append(sent.with_labels(labels))
        out_doc = Document(doc.id, tuple(sents))
        out_docs.append(out_doc)
        if dictionary is not None:
            entities += annotate_document(out_doc, [bio_to_spans(s.labels) for s in sents], dictionary)
    atomic_write(args.output, serialize_conll(out_docs))
    if dictionary is not None:
        _emit(entities_to_json(entities), args.entities_out or "-")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    schema = _schema(args)
    gold = _read_corpus(args.gold, schema)
    pred = _read_corpus(args.pred, schema)
    try:
        if args.mode == "entity":
            rep = metrics.entity_metrics_from_docs(gold, pred, schema)
            # token streams must still line up
            metrics.token_metrics(gold, pred)
        else:
            rep = metrics.token_metrics(gold, pred, args.include_o, schema)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    sys.stdout.write(rep.table())
    _emit(rep.to_json(), args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stressner", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def schema_flag(p):
        p.add_argument("--classes", help="comma-separated entity classes (default: the 7 stress-response classes)")

    p = sub.add_parser("validate", help="report BIO violations")
    p.add_argument("corpus", nargs="+")
    schema_flag(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("repair", help="repair BIO violations")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mismatch", choices=["new", "continue"], default="new",
                   help="class-mismatched I- tags start a new entity or continue the running one")
    schema_flag(p)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("iaa", help="pairwise Cohen's kappa and G-index")
    p.add_argument("files", nargs="+")
    p.add_argument("--unit", choices=["token", "class"], default="token")
    p.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    schema_flag(p)
    p.set_defaults(func=cmd_iaa)

    p = sub.add_parser("train", help="train the tagger")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--model-out", required=True)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--decay", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=13)
    p.add_argument("--o-weight", type=float, default=0.1, help="multiplier on the O label's class weight")
    p.add_argument("--hash-bits", type=int, default=18)
    p.add_argument("--loss-log", help="write 'epoch<TAB>loss' lines here")
    p.add_argument("--supervise-continuations", action="store_true",
                   help="include continuation subword pieces in the loss (masked out by default)")
    schema_flag(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="tag a corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--postprocess", action="store_true", help="apply POS-aware post-processing")
    p.add_argument("--rules", help="post-processing rule file")
    p.add_argument("--ontology", help="dictionary TSV for entity normalization")
    p.add_argument("--entities-out", help="entity JSON path (default stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--mode", choices=["token", "entity"], default="token")
    p.add_argument("--include-o", action="store_true")
    p.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    schema_flag(p)
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "hash_bits", 1) < 1 or getattr(args, "hash_bits", 1) > 30:
        parser.error("--hash-bits must be between 1 and 30")
    try:
        if getattr(args, "classes", None) is not None:
            _schema(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"stressner: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
