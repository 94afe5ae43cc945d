from __future__ import annotations

import pytest
from hypothesis import settings

from arithgraph.enumeration import enumerate_all
from arithgraph.graphs import make_family

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def enumerated():
    """Memoized enumerate_all keyed by (family, n)."""
    memo = {}

    def get(family, n):
        if (family, n) not in memo:
            memo[family, n] = enumerate_all(make_family(family, n))
        return memo[family, n]

    return get


@pytest.fixture(scope="session")
def c3(enumerated):
    return enumerated("cycle", 3)


@pytest.fixture(scope="session")
def f2(enumerated):
    return enumerated("fan", 2)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], "PASS" if rep.passed else "FAIL",
                              props["elapsed"], props["title"]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, status, elapsed, title in sorted(lines):
            terminalreporter.write_line(f"{status} criterion {num:2d} ({elapsed:6.2f}s) {title}")
