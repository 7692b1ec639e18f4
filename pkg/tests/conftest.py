import itertools

import pytest

from popstack.automata import build_sorting_plan_dfa


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def plan_dfas():
    cache = {}

    def get(k):
        if k not in cache:
            cache[k] = build_sorting_plan_dfa(k)
        return cache[k]

    return get


def operation_sequences(n):
    """All operation sequences of length n + 1."""
    if n == 0:
        return ["a"]
    return ["a" + "".join(p) + "a" for p in itertools.product("ad", repeat=n - 1)]


def all_arrays(k, n):
    return itertools.product(operation_sequences(n), repeat=k)
