import numpy as np
import pytest

from stressner.agreement import (
    AgreementTable,
    UndefinedMetricError,
    build_table,
    class_units,
    cohen_kappa,
    g_index,
    pairwise_iaa,
)


def oracle(counts):
    """P0, Pe, kappa and G by explicit loops over the table."""
    k = len(counts)
    n = sum(sum(row) for row in counts)
    p0 = sum(counts[i][i] for i in range(k)) / n
    pe = 0.0
    for i in range(k):
        row = sum(counts[i][j] for j in range(k))
        col = sum(counts[j][i] for j in range(k))
        pe += (row / n) * (col / n)
    kappa = 1 - (1 - p0) / (1 - pe) if pe < 1 else None
    g = 1 - (1 - p0) / (1 - 1 / k)
    return p0, pe, kappa, g


def test_build_table():
    t = build_table(["x", "x"], ["x", "y"], ["x", "y"])
    assert t.counts.tolist() == [[1, 1], [0, 0]]
    t = build_table(list("abcab"), list("abcab"), ["a", "b", "c"])
    assert np.trace(t.counts) == 5
    with pytest.raises(ValueError):
        build_table([], [], ["x"])
    with pytest.raises(ValueError):
        build_table(["x"], ["x", "y"], ["x", "y"])
    with pytest.raises(ValueError):
        build_table(["x"], ["z"], ["x", "y"])


def test_kappa_hand_case():
    a = ["A"] * 5 + ["B"] * 5
    b = ["A", "A", "A", "A", "B", "B", "B", "B", "B", "A"]
    t = build_table(a, b, ["A", "B"])
    assert t.p0 == 0.8
    assert t.pe == 0.5
    assert cohen_kappa(t) == 0.6
    assert g_index(t) == 0.6


def test_perfect_agreement():
    t = build_table(list("abca"), list("abca"), list("abc"))
    assert cohen_kappa(t) == 1.0
    assert g_index(t) == 1.0


@pytest.mark.parametrize("p0_num, n, k, expected", [(8, 10, 2, 0.6), (7, 10, 4, 0.6)])
def test_g_index_hand(p0_num, n, k, expected):
    counts = np.zeros((k, k), dtype=int)
    counts[0, 0] = p0_num
    counts[0, 1] = n - p0_num
    assert g_index(AgreementTable(tuple("abcd"[:k]), counts)) == pytest.approx(expected, abs=1e-15)


def test_undefined_cases():
    one_cat = AgreementTable(("a", "b"), [[5, 0], [0, 0]])
    with pytest.raises(UndefinedMetricError):
        cohen_kappa(one_cat)
    with pytest.raises(UndefinedMetricError):
        g_index(AgreementTable(("a",), [[3]]))
    with pytest.raises(UndefinedMetricError):
        cohen_kappa(AgreementTable(("a", "b"), [[0, 0], [0, 0]]))


def test_matches_oracle_and_invariants():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        k = int(rng.integers(2, 8))
        counts = rng.integers(0, 30, size=(k, k))
        counts[rng.random((k, k)) < 0.3] = 0
        if counts.sum() == 0:
            continue
        table = AgreementTable(tuple(map(str, range(k))), counts)
        p0, pe, kappa, g = oracle(counts.tolist())
        assert abs(g_index(table) - g) < 1e-12
        if kappa is None:
            continue
        got = cohen_kappa(table)
        assert abs(got - kappa) < 1e-12
        assert got <= 1.0
        assert (got == 1.0) == (np.trace(counts) == counts.sum())
        assert abs(cohen_kappa(table.transpose()) - got) < 1e-12
        perm = rng.permutation(k)
        shuffled = AgreementTable(table.categories, counts[np.ix_(perm, perm)])
        assert abs(cohen_kappa(shuffled) - got) < 1e-12
        assert abs(g_index(shuffled) - g_index(table)) < 1e-12


def test_g_equals_kappa_under_uniform_marginals():
    rng = np.random.default_rng(4)
    for _ in range(200):
        k = int(rng.integers(2, 9))
        counts = np.zeros((k, k), dtype=int)
        for _ in range(int(rng.integers(1, 6))):
            counts[np.arange(k), rng.permutation(k)] += int(rng.integers(1, 5))
        table = AgreementTable(tuple(map(str, range(k))), counts)
        assert abs(table.pe - 1 / k) < 1e-12
        if table.pe < 1:
            assert abs(g_index(table) - cohen_kappa(table)) < 1e-12


def test_pairwise_two_annotators_equals_single_pair():
    a, b = list("xxyyx"), list("xyyyx")
    rep = pairwise_iaa([a, b], ["x", "y"])
    t = build_table(a, b, ["x", "y"])
    assert rep.kappa == cohen_kappa(t)
    assert rep.g_index == g_index(t)
    assert len(rep.pairs) == 1


def test_pairwise_identical_annotators():
    a = list("xyzzy")
    rep = pairwise_iaa([a, a, a], ["x", "y", "z"])
    assert rep.kappa == 1.0
    assert len(rep.pairs) == 3


def test_pairwise_three_annotators_hand():
    # pair kappas 0.5, 0.5, 0.2 and G values 0.5, 0.5, 0.0 (worked by hand)
    a1, a2, a3 = list("xxyy"), list("xyyy"), list("xxxy")
    rep = pairwise_iaa([a1, a2, a3], ["x", "y"], names=["a1", "a2", "a3"])
    assert [r.kappa for _, r in rep.pairs] == pytest.approx([0.5, 0.5, 0.2], abs=1e-15)
    assert rep.kappa == pytest.approx(0.4, abs=1e-15)
    assert rep.g_index == pytest.approx(1 / 3, abs=1e-15)
    assert rep.pairs[2][0] == ("a2", "a3")


def test_pairwise_error_names_pair():
    with pytest.raises(UndefinedMetricError, match="b and c"):
        pairwise_iaa([list("xy"), list("xx"), list("xx")], ["x", "y"], names="abc")
    with pytest.raises(ValueError):
        pairwise_iaa([list("xy")], ["x", "y"])


def test_class_units():
    assert class_units(["O", "B-X", "I-X"]) == ["O", "X", "X"]
