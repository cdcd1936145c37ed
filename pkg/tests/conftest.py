import numpy as np
import pytest

from opclass.classify import classify
from opclass.linalg import Tolerances
from opclass.testkit import corpus

CORPUS_TOL = 1e-6
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def seeded_corpus():
    return corpus(42)


@pytest.fixture(scope="session")
def corpus_reports(seeded_corpus):
    tols = Tolerances(psd=CORPUS_TOL)
    return [classify(T, tols) for _, T in seeded_corpus]


@pytest.fixture
def record():
    """Store a one-line outcome for an acceptance criterion."""

    def _record(number, passed, detail=""):
        ACCEPTANCE[number] = (bool(passed), detail)
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
