import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

from catgsb.engine import Basis, check_gsb
from catgsb.presentations import build_cyclic, build_simplicial, parse_presentation

FREE_ASSOC = """\
vertex v
edge x : v -> v
edge y : v -> v
rel y.x = x.y
order deglex y x
"""


@pytest.fixture(scope="session")
def simplicial4():
    return Basis.from_presentation(build_simplicial(4))


@pytest.fixture(scope="session")
def cyclic_sc4():
    return Basis.from_presentation(build_cyclic(4, "SC"))


@pytest.fixture(scope="session")
def cyclic_s4():
    return Basis.from_presentation(build_cyclic(4, "S"))


@pytest.fixture(scope="session")
def free_assoc():
    return Basis.from_presentation(parse_presentation(FREE_ASSOC, "free"))


@pytest.fixture(scope="session")
def simplicial4_report(simplicial4):
    return check_gsb(simplicial4)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
