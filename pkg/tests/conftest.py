import pytest

from hopfcontra.exactla import GF, QQ
from hopfcontra.hopf import build_named_example


@pytest.fixture(scope="session")
def c2():
    return build_named_example("group_C2", QQ)


@pytest.fixture(scope="session")
def c3():
    return build_named_example("group_C3", QQ)


@pytest.fixture(scope="session")
def h4():
    return build_named_example("sweedler_H4", QQ)


@pytest.fixture(scope="session")
def h4_gf7():
    return build_named_example("sweedler_H4", GF(7))


@pytest.fixture(scope="session")
def trivial():
    return build_named_example("trivial", QQ)
