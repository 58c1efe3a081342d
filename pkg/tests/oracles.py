"""Independent brute-force reference implementations used by the tests."""


def _div(a, b):
    return a / b if b != 0 else 0.0


def _summarise(classes, tp, fp, fn):
    out = {"per_class": {}}
    for c in classes:
        p = _div(tp[c], tp[c] + fp[c])
        r = _div(tp[c], tp[c] + fn[c])
        f = _div(2 * p * r, p + r)
        out["per_class"][c] = (p, r, f, tp[c] + fn[c])
    n = len(classes)
    support = sum(v[3] for v in out["per_class"].values())
    for i, name in enumerate(("precision", "recall", "f1")):
        macro = 0.0
        weighted = 0.0
        for c in classes:
            macro += out["per_class"][c][i]
            weighted += out["per_class"][c][i] * out["per_class"][c][3]
        out["macro_" + name] = _div(macro, n)
        out["weighted_" + name] = _div(weighted, support)
    return out


def token_tally(gold, pred, include_o=False):
    """Flat label lists in; tallies each candidate class in a separate pass."""
    classes = sorted({x for x in list(gold) + list(pred) if include_o or x != "O"})
    tp, fp, fn = {}, {}, {}
    for c in classes:
        tp[c] = fp[c] = fn[c] = 0
        for g, p in zip(gold, pred):
            if g == c and p == c:
                tp[c] += 1
            elif p == c:
                fp[c] += 1
            elif g == c:
                fn[c] += 1
    out = _summarise(classes, tp, fp, fn)
    hits = 0
    for g, p in zip(gold, pred):
        if g == p:
            hits += 1
    out["accuracy"] = _div(hits, len(gold))
    return out


def runs(labels):
    """Entity runs decoded independently: B-X starts, I-X continues same class."""
    spans, start, cls = [], None, None
    for i, lab in enumerate(list(labels) + ["O"]):
        if start is not None and lab != "I-" + cls:
            spans.append((start, i, cls))
            start = None
        if lab.startswith("B-"):
            start, cls = i, lab[2:]
    return spans


def entity_tally(gold_sents, pred_sents):
    """Lists of per-sentence span lists in; strict exact-match counting."""
    classes = sorted({s[2] for sent in list(gold_sents) + list(pred_sents) for s in sent})
    tp, fp, fn = {}, {}, {}
    for c in classes:
        tp[c] = fp[c] = fn[c] = 0
        for g_sent, p_sent in zip(gold_sents, pred_sents):
            for s in p_sent:
                if s[2] == c:
                    if s in g_sent:
                        tp[c] += 1
                    else:
                        fp[c] += 1
            for s in g_sent:
                if s[2] == c and s not in p_sent:
                    fn[c] += 1
    out = _summarise(classes, tp, fp, fn)
    t = sum(tp.values())
    p = _div(t, t + sum(fp.values()))
    r = _div(t, t + sum(fn.values()))
    out["micro"] = (p, r, _div(2 * p * r, p + r))
    return out


def report_deviation(report, oracle):
    """Largest absolute difference between an EvalReport and an oracle dict."""
    worst = 0.0
    if set(report.per_class) != set(oracle["per_class"]):
        return float("inf")
    for c, (p, r, f, s) in oracle["per_class"].items():
        got = report.per_class[c]
        if got.support != s:
            return float("inf")
        worst = max(worst, abs(got.precision - p), abs(got.recall - r), abs(got.f1 - f))
    for key in ("macro_precision", "macro_recall", "macro_f1",
                "weighted_precision", "weighted_recall", "weighted_f1"):
        worst = max(worst, abs(getattr(report, key) - oracle[key]))
    if "accuracy" in oracle:
        worst = max(worst, abs(report.accuracy - oracle["accuracy"]))
    if "micro" in oracle:
        for key, val in zip(("micro_precision", "micro_recall", "micro_f1"), oracle["micro"]):
            worst = max(worst, abs(getattr(report, key) - val))
    return worst
