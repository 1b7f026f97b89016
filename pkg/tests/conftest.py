import numpy as np
import pytest

from cli_fixtures import SQUARE

from midsoliton.cli import main
from midsoliton.curve import SolitonSpec

ACCEPTANCE_RESULTS = {}


def example_specs():
    """The planar orbits used as fixtures throughout (name -> spec)."""
    return {
        "a_lambda3": SolitonSpec(np.diag([1.0, 3.0]), [0, 0], [1, 1]),
        "a_lambda_minus2": SolitonSpec(np.diag([1.0, -2.0]), [0, 0], [1, 1]),
        "b": SolitonSpec([[0, 0], [0, 1]], [1, 0], [0, 1]),
        "c": SolitonSpec([[1, 1], [0, 1]], [0, 0], [1, 1]),
        "d": SolitonSpec([[0.6, -0.8], [0.8, 0.6]], [0, 0], [1, 0]),
        "e": SolitonSpec([[0, 1], [0, 0]], [0, 1], [0, 0]),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20200131)


@pytest.fixture
def parabola():
    return example_specs()["e"]


@pytest.fixture
def run(capsys):
    """Call the CLI in-process; returns (exit code, stdout, stderr)."""
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def square(tmp_path):
    p = tmp_path / "square.csv"
    p.write_text(SQUARE)
    return p


@pytest.fixture
def record():
    """Store a pass/fail line for the acceptance summary."""
    def _record(criterion, passed, detail):
        ACCEPTANCE_RESULTS[criterion] = (passed, detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key}: {detail}")
