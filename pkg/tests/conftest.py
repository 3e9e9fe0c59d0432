import pytest

from corpus import build_n4_corpus, build_small_corpus, make_c2


@pytest.fixture(scope="session")
def c2():
    return make_c2()


@pytest.fixture(scope="session")
def corpus_small():
    return build_small_corpus()


@pytest.fixture(scope="session")
def corpus_n4():
    return build_n4_corpus()


@pytest.fixture(scope="session")
def corpus_all(corpus_small, corpus_n4):
    return corpus_small + corpus_n4
