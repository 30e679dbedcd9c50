import numpy as np
import pytest
from hypothesis import settings

from regip.harness import seed_from_env
from regip.outer import RegipConfig, regip_solve
from regip.problems import get_problem, list_problems

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

SUITE_TOLS = (1e-3, 1e-5)
_CRITERIA: dict = {}


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(seed_from_env(20240611))


@pytest.fixture(scope="session")
def suite_reports():
    """RegIP on every suite problem at both benchmark tolerances, run once per session."""
    out = {}
    for name in list_problems():
        for eps in SUITE_TOLS:
            out[(name, eps)] = regip_solve(get_problem(name).problem, RegipConfig(eps=eps))
    return out


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str = ""):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
