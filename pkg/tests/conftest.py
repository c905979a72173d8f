from pathlib import Path

import pytest

from accuscore import Role, load_game
from accuscore.formats import load_corpus, load_mistake_csv

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return FIXTURES / "corpus"


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(FIXTURES / "corpus")


@pytest.fixture(scope="session")
def gold_example(corpus):
    """Gold list for the pre-tokenized two-sentence example (20 tokens)."""
    return load_mistake_csv(FIXTURES / "gsml_nuggets_heat.csv", Role.GOLD)


@pytest.fixture(scope="session")
def reported_example(corpus):
    """Reported list whose four entries exercise all four match criteria."""
    return load_mistake_csv(FIXTURES / "rml_nuggets_heat.csv", Role.REPORTED)


@pytest.fixture(scope="session")
def gold_composite(corpus):
    """Ten-entry gold list over the longer game summary."""
    return load_mistake_csv(FIXTURES / "gsml_grizzlies_suns.csv", Role.GOLD)


@pytest.fixture(scope="session")
def game():
    return load_game(FIXTURES / "corpus" / "games" / "201411050PHO.json")


def criterion(label):
    """Tag an acceptance test; its verdict is echoed in the terminal summary."""

    def decorator(fn):
        fn._acceptance_label = label
        return fn

    return decorator


_acceptance_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(getattr(item, "function", None), "_acceptance_label", None)
    if label is not None and report.when == "call":
        _acceptance_results.append((label, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in _acceptance_results:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {label}")
