"""Pairwise inter-annotator agreement: Cohen's kappa and the G-index."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np


class UndefinedMetricError(ValueError):
    pass


@dataclass(frozen=True)
class AgreementTable:
    """Cross-annotator confusion counts; ``counts[i, j]`` is the number of
    items annotator A labeled ``categories[i]`` and annotator B labeled
    ``categories[j]``."""

    categories: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.categories)
        if counts.shape != (k, k):
            raise ValueError(f"counts must be {k}x{k}, got {counts.shape}")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "counts", counts)

    @property
    def k(self) -> int:
        return len(self.categories)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def p0(self) -> float:
        self._check_total()
        return float(np.trace(self.counts)) / self.total

    @property
    def pe(self) -> float:
        self._check_total()
        n = self.total
        rows = self.counts.sum(axis=1) / n
        cols = self.counts.sum(axis=0) / n
        return float(rows @ cols)

    @property
    def pk(self) -> float:
        return 1.0 / self.k

    def transpose(self) -> "AgreementTable":
        return AgreementTable(self.categories, self.counts.T.copy())

    def _check_total(self):
        if self.total <= 0:
            raise UndefinedMetricError("agreement table is empty")


@dataclass
class IaaReport:
    p0: float
    pe: float
    kappa: float
    g_index: float
    k: int
    pairs: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"p0": self.p0, "pe": self.pe, "kappa": self.kappa, "g_index": self.g_index, "k": self.k}
        if self.pairs:
            out["pairs"] = [dict(annotators=list(pair), **rep.to_dict()) for pair, rep in self.pairs]
        return out


def build_table(ann_a: Sequence[str], ann_b: Sequence[str], categories: Sequence[str]) -> AgreementTable:
    if len(ann_a) != len(ann_b):
        raise ValueError(f"annotation lengths differ: {len(ann_a)} vs {len(ann_b)}")
    if not ann_a:
        raise ValueError("cannot build an agreement table from empty annotations")
    index = {c: i for i, c in enumerate(categories)}
    counts = np.zeros((len(categories), len(categories)), dtype=np.int64)
    for pos, (a, b) in enumerate(zip(ann_a, ann_b)):
        try:
            counts[index[a], index[b]] += 1
        except KeyError as exc:
            raise ValueError(f"label {exc.args[0]!r} at position {pos} is not a category") from None
    return AgreementTable(tuple(categories), counts)


def cohen_kappa(table: AgreementTable) -> float:
    """kappa = 1 - (1 - P0) / (1 - Pe) with Pe from the two annotators' marginals."""
    table._check_total()
    # integer form: 1 - disagree*n / (n^2 - sum_i row_i*col_i), one rounding
    n = table.total
    disagree = n - int(np.trace(table.counts))
    rows = [int(v) for v in table.counts.sum(axis=1)]
    cols = [int(v) for v in table.counts.sum(axis=0)]
    chance_gap = n * n - sum(r * c for r, c in zip(rows, cols))
    if chance_gap == 0:
        raise UndefinedMetricError("kappa is undefined when chance agreement Pe = 1")
    return 1.0 - (disagree * n) / chance_gap


def g_index(table: AgreementTable) -> float:
    """G = 1 - (1 - P0) / (1 - 1/k); depends only on observed agreement and k."""
    if table.k < 2:
        raise UndefinedMetricError("the G-index needs at least two categories")
    table._check_total()
    disagree = table.total - int(np.trace(table.counts))
    return 1.0 - (disagree * table.k) / (table.total * (table.k - 1))


def report(table: AgreementTable) -> IaaReport:
    return IaaReport(table.p0, table.pe, cohen_kappa(table), g_index(table), table.k)


def pairwise_iaa(
    annotations: Sequence[Sequence[str]],
    categories: Sequence[str],
    names: Sequence[str] | None = None,
) -> IaaReport:
    """Kappa and G for every unordered annotator pair, averaged arithmetically.

    The returned report holds the mean values; ``report.pairs`` keeps the
    per-pair reports keyed by annotator names (indices by default).
    """
    if len(annotations) < 2:
        raise ValueError("need at least two annotators")
    names = list(names) if names is not None else [str(i) for i in range(len(annotations))]
    pairs = []
    for i, j in combinations(range(len(annotations)), 2):
        try:
            rep = report(build_table(annotations[i], annotations[j], categories))
        except (UndefinedMetricError, ValueError) as exc:
            raise type(exc)(f"annotators {names[i]} and {names[j]}: {exc}") from exc
        pairs.append(((names[i], names[j]), rep))
    reps = [rep for _, rep in pairs]
    return IaaReport(
        p0=float(np.mean([r.p0 for r in reps])),
        pe=float(np.mean([r.pe for r in reps])),
        kappa=float(np.mean([r.kappa for r in reps])),
        g_index=float(np.mean([r.g_index for r in reps])),
        k=len(categories),
        pairs=pairs,
    )


def class_units(labels: Sequence[str]) -> list[str]:
    """Collapse BIO labels to entity classes (``B-X``/``I-X`` -> ``X``)."""
    return [lab if lab == "O" else lab[2:] for lab in labels]
