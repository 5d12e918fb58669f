import pytest

from sig_audit import normalize
from sig_audit.corpus import bundled_corpus, bundled_set_a
from sig_audit.matcher import detection_matrix


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


@pytest.fixture(scope="session")
def set_a_ids():
    return bundled_set_a()


@pytest.fixture(scope="session")
def raw_matrix(corpus):
    return detection_matrix(corpus, normalize.RAW_PIPELINE)


@pytest.fixture(scope="session")
def default_pipeline():
    return normalize.default_pipeline()
