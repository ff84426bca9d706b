import numpy as np
import pytest

from bakerotoc.quantum import build_baker


@pytest.fixture(scope="session")
def baker():
    """Cached quantum baker matrices keyed by N."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_baker(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def baker_powers(baker):
    """baker_powers(n, t_max) -> list [B^0, ..., B^t_max], cached."""
    cache = {}

    def get(n, t_max):
        have = cache.setdefault(n, [np.eye(n, dtype=np.complex128)])
        while len(have) <= t_max:
            have.append(baker(n) @ have[-1])
        return have[: t_max + 1]

    return get


def rel(a, b):
    return abs(a - b) / abs(b)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
