import pytest

from solvint import corpus, tower


@pytest.fixture(scope="session")
def corpus_list():
    return corpus.corpus_groups()


@pytest.fixture(scope="session")
def tower2():
    return tower.TowerGroup(tower.find_primes(2))


@pytest.fixture(scope="session")
def tower3():
    return tower.TowerGroup(tower.find_primes(3))


@pytest.fixture(scope="session")
def sdp_pool():
    return corpus.sdp_pool(2000)
