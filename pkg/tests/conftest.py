import sys

import pytest
from hypothesis import settings

from nilbox.factorpipe import box_product
from nilbox.seeds import seed_decomposition

settings.register_profile("nilbox", derandomize=True, deadline=None)
settings.load_profile("nilbox")


@pytest.fixture(scope="session")
def j22():
    return box_product(seed_decomposition(2), seed_decomposition(2, "y"))


@pytest.fixture(scope="session")
def j23():
    return box_product(seed_decomposition(2), seed_decomposition(3, "y"))


@pytest.fixture(scope="session")
def j23_alt():
    return box_product(seed_decomposition(2), seed_decomposition(3, "y"),
                       order=["b2", "g1", "g2", "a1", "b1"])


@pytest.fixture(scope="session")
def j223(j22):
    return box_product(j22.decomposition, seed_decomposition(3, "y"))


@pytest.fixture(scope="session")
def j223_alt(j23):
    return box_product(seed_decomposition(2), j23.decomposition)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, title = results[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")


def _lettered(sizes):
    from nilbox.booster import lettered
    from nilbox.cli import fold
    bd, _ = fold(sizes)
    return lettered(bd)


@pytest.fixture(scope="session")
def a2():
    return _lettered((2,))


@pytest.fixture(scope="session")
def a23():
    return _lettered((2, 3))


@pytest.fixture(scope="session")
def a4():
    return _lettered((4,))


@pytest.fixture(scope="session")
def e2(a2):
    from nilbox.booster import boost
    A, vec, _ = a2
    return boost(A, None, vec)


@pytest.fixture(scope="session")
def e23(a23):
    from nilbox.booster import boost
    A, vec, _ = a23
    return boost(A, ("a", "b", "d"), vec)


@pytest.fixture(scope="session")
def e4(a4):
    from nilbox.booster import boost
    A, vec, _ = a4
    return boost(A, ("b", "a", "c"), vec)
