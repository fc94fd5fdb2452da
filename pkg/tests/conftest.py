import pytest

from loopcybe.loop import SigmaType, loop_algebra


@pytest.fixture(scope="session")
def sl2_loop():
    return loop_algebra(SigmaType.make("A1", [1, 0]))


@pytest.fixture(scope="session")
def sl2_coxeter():
    return loop_algebra(SigmaType.make("A1", [1, 1]))


@pytest.fixture(scope="session")
def sl3_loop():
    return loop_algebra(SigmaType.make("A2", [1, 0, 0]))


@pytest.fixture(scope="session")
def sl3_principal():
    return loop_algebra(SigmaType.make("A2", [1, 1, 1]))


@pytest.fixture(scope="session")
def a2_twisted():
    return loop_algebra(SigmaType.make("A2", [1, 0], nu=[1, 0]))
