import pytest

from twograph.classifier import classify_subsets
from twograph.e7 import bitangent_two_graph
from twograph.twograph import enumerate_classes


@pytest.fixture(scope="session")
def model():
    return bitangent_two_graph()


@pytest.fixture(scope="session")
def catalogs():
    return {n: enumerate_classes(n) for n in range(1, 8)}


@pytest.fixture(scope="session")
def reports(model, catalogs):
    return {n: classify_subsets(n, catalogs[n], model) for n in range(3, 7)}


ACCEPTANCE = pytest.StashKey[list]()


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="seed for randomized acceptance suites")


@pytest.fixture(scope="session")
def seed(request):
    from twograph.classifier import DEFAULT_SEED

    value = request.config.getoption("--seed")
    return DEFAULT_SEED if value is None else value


@pytest.fixture
def record(request):
    """Log one pass/fail line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def _record(criterion: str, passed: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        lines.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
