import pytest

from setrat import fixtures
from setrat.choice import all_tables
from setrat.prefs import Universe


def S(text):
    """'abc' -> ['a', 'b', 'c'] for single-letter universes."""
    return list(text)


@pytest.fixture(scope="session")
def abc():
    return Universe("abc")


@pytest.fixture(scope="session")
def tables3(abc):
    return list(all_tables(abc))


@pytest.fixture(scope="session")
def table1():
    return fixtures.table1()


@pytest.fixture(scope="session")
def table2():
    return fixtures.table2()


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the numba kernels once so timing tests measure steady state
    from setrat.axioms import AXIOMS, check_axiom, check_self_stable

    t = fixtures.fig1()
    for ax in AXIOMS:
        check_axiom(t, ax)
    check_self_stable(t)
    fixtures.table1().full_margins


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Time a block, record one PASS/FAIL line for the terminal summary, fail on overrun."""
    import time
    from contextlib import contextmanager

    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            lines.append(f"FAIL criterion {number}: {title} ({elapsed:.2f}s) {type(exc).__name__}: {exc}"[:300])
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s)")
        print(lines[-1])
        assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
