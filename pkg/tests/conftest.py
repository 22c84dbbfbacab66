import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cpl.repl import Runner, bundled  # noqa: E402
from golden import DEFINITIONS  # noqa: E402


def fresh_runner(prelude: str = "prelude.cpl", definitions: bool = False) -> Runner:
    r = Runner()
    r.run_text(bundled(prelude))
    assert not r.diagnostics, r.diagnostics
    if definitions:
        for name, rhs, _ in DEFINITIONS:
            r.execute(f"let {name}={rhs}")
        assert not r.diagnostics, r.diagnostics
    r.output.clear()
    return r


@pytest.fixture(scope="session")
def prelude_env():
    return fresh_runner().session.env


@pytest.fixture(scope="session")
def corpus_env():
    """Prelude plus every reference definition."""
    return fresh_runner(definitions=True).session.env


@pytest.fixture(scope="session")
def catalogue_env():
    return fresh_runner("catalogue.cpl").session.env


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
