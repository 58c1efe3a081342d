import pytest

from stressner.corpus import LabelSchema
from stressner.subword import load_vocab
from stressner.synthetic import bundled_path, load_bundled

_acceptance_titles = {}
_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _acceptance_titles.get(report.nodeid)
    if marker:
        detail = "; ".join(f"{k} {v}" for k, v in report.user_properties)
        _acceptance_results.append((marker, report.outcome, detail))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m:
            _acceptance_titles[item.nodeid] = f"criterion {m.args[0]:>2}: {m.args[1]}"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _acceptance_results:
        line = f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)


@pytest.fixture(scope="session")
def schema():
    return LabelSchema()


@pytest.fixture(scope="session")
def xy_schema():
    return LabelSchema(("X", "Y"))


@pytest.fixture(scope="session")
def vocab():
    return load_vocab(bundled_path("vocab.txt"))


@pytest.fixture(scope="session")
def separable():
    return load_bundled("separable.conll")


@pytest.fixture(scope="session")
def imbalanced():
    return load_bundled("imbalanced.conll")
