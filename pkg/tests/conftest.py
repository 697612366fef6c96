import pytest

from app.services.corpus import corpus_algebra
from app.services.fields import QQ, prime_field


@pytest.fixture(scope="session")
def f101():
    return prime_field(101)


@pytest.fixture(scope="session")
def f2():
    return prime_field(2)


@pytest.fixture(scope="session")
def qq():
    return QQ


@pytest.fixture(scope="session")
def a2():
    return corpus_algebra("reflexive-simples-2")


@pytest.fixture(scope="session")
def three_vertex():
    return corpus_algebra("linear-3-zero-composite")


@pytest.fixture(scope="session")
def line2():
    return corpus_algebra("line-2")


@pytest.fixture(scope="session")
def local_xy():
    return corpus_algebra("local-xy-rad2")
