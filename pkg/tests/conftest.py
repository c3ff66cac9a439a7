import itertools
import random

import pytest

from knapqsec.core import new_instance

_acceptance_results = []


def bits_of(value, n):
    return [(value >> (n - i)) & 1 for i in range(1, n + 1)]


def naive_sum(bits, b):
    return sum(x * bi for x, bi in zip(bits, b))


def enumerate_basis_states(inst):
    """Yield (a, x, y, z, G) for every basis state, evaluating G bit by bit."""
    n, b, s, r = inst.n, inst.b, inst.s, inst.r
    rng = range(1 << n)
    for a in (0, 1):
        for x, y, z in itertools.product(rng, rng, rng):
            xb, yb, zb = bits_of(x, n), bits_of(y, n), bits_of(z, n)
            if a == 0:
                G = (2 * naive_sum([p ^ q for p, q in zip(xb, yb)], b) + s - naive_sum(xb, b)) % r
            else:
                G = 2 * naive_sum([p ^ q for p, q in zip(xb, zb)], b) % r
            yield a, x, y, z, G


def random_instance(rng, n, r_max=None, r_min=2):
    r = rng.randint(r_min, r_max if r_max is not None else 4**n)
    return new_instance([rng.randrange(r) for _ in range(n)], rng.randrange(r), r)


@pytest.fixture
def rng():
    return random.Random(20240501)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance_results:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
