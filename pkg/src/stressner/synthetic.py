"""Deterministic synthetic stress-response corpora for exercising the pipeline.

``separable_corpus`` draws entity mentions from fixed per-class lexicons
whose words never occur outside entities. ``imbalanced_corpus`` pads every
sentence with long non-entity clauses (entity tokens stay under 10%) and
mixes in invented rare mentions, so recall on entity labels is not free.
"""
from __future__ import annotations

from collections import Counter
from importlib import resources

from .corpus import Document, LabelSchema, Sentence, Token
from .subword import SubwordVocab
from .tagger.rng import SplitMix64

LEXICON = {
    "PlantSpecies": [
        ("Lens culinaris", "PROPN PROPN"),
        ("lentil", "NOUN"),
        ("Cicer arietinum", "PROPN PROPN"),
        ("chickpea", "NOUN"),
        ("Pisum sativum", "PROPN PROPN"),
        ("Vicia faba", "PROPN PROPN"),
        ("faba bean", "NOUN NOUN"),
        ("Lathyrus sativus", "PROPN PROPN"),
        ("grass pea", "NOUN NOUN"),
    ],
    "AbioticStress": [
        ("drought", "NOUN"),
        ("salinity", "NOUN"),
        ("heat stress", "NOUN NOUN"),
        ("cold stress", "ADJ NOUN"),
        ("waterlogging", "NOUN"),
        ("salt stress", "NOUN NOUN"),
        ("high temperature", "ADJ NOUN"),
        ("terminal drought", "ADJ NOUN"),
        ("frost", "NOUN"),
    ],
    "BioticStress": [
        ("Ascochyta blight", "PROPN NOUN"),
        ("Fusarium wilt", "PROPN NOUN"),
        ("Botrytis grey mould", "PROPN ADJ NOUN"),
        ("aphids", "NOUN"),
        ("Stemphylium blight", "PROPN NOUN"),
        ("root rot", "NOUN NOUN"),
        ("Orobanche", "PROPN"),
        ("rust", "NOUN"),
        ("nematodes", "NOUN"),
    ],
    "MolecularResponse": [
        ("gene expression", "NOUN NOUN"),
        ("DREB transcription factors", "PROPN NOUN NOUN"),
        ("miRNA regulation", "NOUN NOUN"),
        ("HSP70 upregulation", "PROPN NOUN"),
        ("aquaporin transcripts", "NOUN NOUN"),
        ("LcNAC1 induction", "PROPN NOUN"),
    ],
    "PhysiologicalResponse": [
        ("stomatal conductance", "ADJ NOUN"),
        ("relative water content", "ADJ NOUN NOUN"),
        ("photosynthetic rate", "ADJ NOUN"),
        ("chlorophyll fluorescence", "NOUN NOUN"),
        ("transpiration", "NOUN"),
        ("leaf water potential", "NOUN NOUN NOUN"),
    ],
    "AgronomicResponse": [
        ("grain yield", "NOUN NOUN"),
        ("seed weight", "NOUN NOUN"),
        ("pod number", "NOUN NOUN"),
        ("biomass", "NOUN"),
        ("plant height", "NOUN NOUN"),
        ("harvest index", "NOUN NOUN"),
    ],
    "BiochemicalResponse": [
        ("proline accumulation", "NOUN NOUN"),
        ("antioxidant enzyme activity", "NOUN NOUN NOUN"),
        ("malondialdehyde content", "NOUN NOUN"),
        ("superoxide dismutase", "NOUN NOUN"),
        ("catalase activity", "NOUN NOUN"),
        ("glycine betaine", "NOUN NOUN"),
    ],
}

# {Class} is an entity slot; other items are "form/POS".
TEMPLATES = [
    "{PlantSpecies} genotypes/NOUN exposed/VERB to/ADP {AbioticStress} showed/VERB reduced/VERB {AgronomicResponse} ./PUNCT",
    "under/ADP {AbioticStress} ,/PUNCT {BiochemicalResponse} increased/VERB markedly/ADV in/ADP {PlantSpecies} ./PUNCT",
    "infection/NOUN by/ADP {BioticStress} lowered/VERB {PhysiologicalResponse} and/CCONJ {AgronomicResponse} ./PUNCT",
    "we/PRON observed/VERB altered/VERB {MolecularResponse} during/ADP {AbioticStress} ./PUNCT",
    "{BioticStress} remains/VERB a/DET major/ADJ constraint/NOUN for/ADP {PlantSpecies} cultivation/NOUN ./PUNCT",
    "tolerant/ADJ lines/NOUN maintained/VERB {PhysiologicalResponse} while/SCONJ {MolecularResponse} was/AUX enhanced/VERB ./PUNCT",
    "the/DET effect/NOUN of/ADP {AbioticStress} on/ADP {BiochemicalResponse} was/AUX assessed/VERB in/ADP {PlantSpecies} ./PUNCT",
    "resistance/NOUN to/ADP {BioticStress} was/AUX linked/VERB with/ADP {MolecularResponse} ./PUNCT",
    "{AgronomicResponse} declined/VERB sharply/ADV after/ADP {AbioticStress} ./PUNCT",
    "{PlantSpecies} accessions/NOUN differed/VERB in/ADP {PhysiologicalResponse} ./PUNCT",
]

FILLER = [
    "the/DET trial/NOUN was/AUX conducted/VERB over/ADP two/NUM consecutive/ADJ seasons/NOUN",
    "measurements/NOUN were/AUX recorded/VERB at/ADP weekly/ADJ intervals/NOUN",
    "data/NOUN were/AUX analysed/VERB using/VERB mixed/ADJ models/NOUN",
    "all/DET treatments/NOUN were/AUX replicated/VERB four/NUM times/NOUN",
    "samples/NOUN were/AUX collected/VERB from/ADP field/NOUN plots/NOUN",
    "these/DET findings/NOUN agree/VERB with/ADP earlier/ADJ reports/NOUN",
    "further/ADJ work/NOUN is/AUX needed/VERB to/PART confirm/VERB this/DET",
    "the/DET design/NOUN followed/VERB a/DET randomized/ADJ block/NOUN layout/NOUN",
    "seed/NOUN was/AUX sourced/VERB from/ADP the/DET {pseudo} station/NOUN",
    "the/DET {pseudo} protocol/NOUN was/AUX applied/VERB to/ADP {pseudo} plots/NOUN",
    "in/ADP {pseudo} ,/PUNCT rainfall/NOUN exceeded/VERB {pseudo} norms/NOUN",
]

_SYLLABLES = ["ca", "lo", "mi", "ter", "phy", "zo", "ran", "gu", "sel", "tho", "bri", "um", "no", "vex", "dal"]
_RARE_SUFFIX = {
    "PlantSpecies": ("PROPN PROPN", lambda w1, w2: f"{w1.capitalize()}us {w2}ii"),
    "AbioticStress": ("NOUN NOUN", lambda w1, w2: f"{w1}{w2} stress"),
    "BioticStress": ("PROPN NOUN", lambda w1, w2: f"{w1.capitalize()}{w2}ia blight"),
    "MolecularResponse": ("PROPN NOUN", lambda w1, w2: f"Lc{w1.upper()}{w2.upper()} expression"),
    "PhysiologicalResponse": ("ADJ NOUN", lambda w1, w2: f"{w1}{w2}al conductance"),
    "AgronomicResponse": ("NOUN NOUN", lambda w1, w2: f"{w1}{w2} yield"),
    "BiochemicalResponse": ("NOUN NOUN", lambda w1, w2: f"{w1}{w2}ase activity"),
}


def _item(text: str) -> Token:
    form, pos = text.rsplit("/", 1)
    return Token(form, pos, "O")


def _mention(cls: str, surface: str, tags: str) -> list[Token]:
    words, pos = surface.split(), tags.split()
    return [Token(w, p, ("B-" if i == 0 else "I-") + cls) for i, (w, p) in enumerate(zip(words, pos))]


def _pseudo_word(rng: SplitMix64) -> str:
    word = "".join(rng.choice(_SYLLABLES) for _ in range(2 + rng.below(2)))
    return word.capitalize() if rng.below(2) else word


def _rare_mention(cls: str, rng: SplitMix64) -> list[Token]:
    if rng.below(2):
        # indistinguishable from filler pseudo-words except by context
        return [Token(_pseudo_word(rng), "PROPN", "B-" + cls)]
    tags, make = _RARE_SUFFIX[cls]
    w1 = rng.choice(_SYLLABLES) + rng.choice(_SYLLABLES)
    w2 = rng.choice(_SYLLABLES) + rng.choice(_SYLLABLES)
    return _mention(cls, make(w1, w2), tags)


def _sentence(rng: SplitMix64, fillers: int = 0, rare_rate: float = 0.0) -> Sentence:
    tokens: list[Token] = []
    for _ in range(fillers):
        for part in rng.choice(FILLER).split():
            tokens.append(Token(_pseudo_word(rng), "PROPN", "O") if part == "{pseudo}" else _item(part))
        tokens.append(Token(",", "PUNCT", "O"))
    for part in rng.choice(TEMPLATES).split():
        if part.startswith("{"):
            cls = part[1:-1]
            if rare_rate and rng.uniform() < rare_rate:
                tokens += _rare_mention(cls, rng)
            else:
                tokens += _mention(cls, *rng.choice(LEXICON[cls]))
        else:
            tokens.append(_item(part))
    return Sentence(tuple(tokens))


def separable_corpus(n_sentences: int = 600, seed: int = 2024, sentences_per_doc: int = 10) -> list[Document]:
    rng = SplitMix64(seed)
    sents = [_sentence(rng) for _ in range(n_sentences)]
    return _documents(sents, sentences_per_doc, "sep")


def imbalanced_corpus(n_sentences: int = 600, seed: int = 7, sentences_per_doc: int = 10) -> list[Document]:
    rng = SplitMix64(seed)
    sents = [_sentence(rng, fillers=4 + rng.below(3), rare_rate=0.35) for _ in range(n_sentences)]
    return _documents(sents, sentences_per_doc, "imb")


def _documents(sents, per_doc, prefix):
    return [
        Document(f"{prefix}{i // per_doc:03d}", tuple(sents[i:i + per_doc]))
        for i in range(0, len(sents), per_doc)
    ]


SUFFIX_PIECES = ("##s", "##ed", "##ing", "##ion", "##al", "##ity", "##ase", "##ii", "##us", "##ia")


def build_vocab(docs, n_words: int = 150) -> SubwordVocab:
    """Characters of the corpus, its ``n_words`` most frequent word forms and
    a few common suffix pieces."""
    freq = Counter(t.form for d in docs for s in d.sentences for t in s.tokens)
    alphabet = {ch for form in freq for ch in form}
    frequent = [w for w, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:n_words]]
    return SubwordVocab.build(list(frequent) + list(SUFFIX_PIECES), alphabet)


def bundled_path(name: str):
    """Path of a file shipped in ``stressner/data``."""
    return resources.files("stressner") / "data" / name


def load_bundled(name: str) -> list[Document]:
    from .corpus import parse_conll

    return parse_conll(bundled_path(name).read_text(encoding="utf-8"), LabelSchema())


def write_bundled(directory) -> None:
    """Regenerate the shipped corpora and vocabulary into ``directory``."""
    from pathlib import Path

    from .corpus import write_conll

    directory = Path(directory)
    sep, imb = separable_corpus(), imbalanced_corpus()
    write_conll(directory / "separable.conll", sep)
    write_conll(directory / "imbalanced.conll", imb)
    (directory / "vocab.txt").write_text(build_vocab(sep + imb).to_text(), encoding="utf-8")
