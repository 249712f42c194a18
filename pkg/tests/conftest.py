import pytest

from curvint.geometry import SIX_SPACES, SpaceSpec

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=SIX_SPACES, ids=lambda k: f"k1={k[0]:+g},k2={k[1]:+g}")
def kappas(request):
    return request.param


@pytest.fixture
def space3(kappas):
    return SpaceSpec(3, *kappas)
