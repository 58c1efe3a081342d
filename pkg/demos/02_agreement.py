# Cohen's kappa and the G-index for two and three annotators
import numpy as np

from stressner.agreement import AgreementTable, build_table, class_units, cohen_kappa, g_index, pairwise_iaa

a = ["A"] * 5 + ["B"] * 5
b = ["A", "A", "A", "A", "B", "B", "B", "B", "B", "A"]
table = build_table(a, b, ["A", "B"])
print(table.counts)                     # rows: annotator a, columns: annotator b
print(table.p0, table.pe)               # observed 0.8, chance 0.5
print(cohen_kappa(table), g_index(table))  # both 0.6 here since marginals are uniform

skewed = AgreementTable(("O", "X"), np.array([[90, 4], [4, 2]]))
print(cohen_kappa(skewed), g_index(skewed))  # kappa drops under skewed marginals, G does not

ann1 = ["O", "B-BioticStress", "I-BioticStress", "O", "B-PlantSpecies"]
ann2 = ["O", "B-BioticStress", "O", "O", "B-PlantSpecies"]
ann3 = ["O", "B-BioticStress", "I-BioticStress", "O", "O"]
units = [class_units(x) for x in (ann1, ann2, ann3)]  # collapse B-/I- to the class name
report = pairwise_iaa(units, ["O", "BioticStress", "PlantSpecies"], names=["ann1", "ann2", "ann3"])
for pair, r in report.pairs:
    print(pair, round(r.kappa, 4), round(r.g_index, 4))
print("mean", round(report.kappa, 4), round(report.g_index, 4))
