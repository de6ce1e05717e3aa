from pathlib import Path

import pytest

from mconvex import generate, load_lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def diamond():
    return load_lattice(FIXTURES / "diamond.json")


@pytest.fixture(scope="session")
def pentagon():
    return load_lattice(FIXTURES / "pentagon.json")


@pytest.fixture(scope="session")
def boolean2():
    return generate("boolean:2")


@pytest.fixture(scope="session")
def boolean3():
    return generate("boolean:3")


@pytest.fixture(scope="session")
def partition4():
    return generate("partition:4")


def element(L, label):
    return L.labels.index(label)
