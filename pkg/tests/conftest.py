import random

import pytest

from recipro.core import Digraph

ACCEPTANCE_RESULTS = {}


def random_digraph(rng, n, p):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        ACCEPTANCE_RESULTS[number] = (title, ok, detail)
        return ok
    return record


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
