import pathlib

import pytest

from balmatch import formats

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"

MARKET_FILES = sorted(p.name for p in CORPUS.glob("*.market"))


def load_market(name: str):
    return formats.parse_market((CORPUS / name).read_text())


def load_tree(name: str):
    return formats.parse_tree((CORPUS / name).read_text())


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def cyclic3():
    return load_market("cyclic3.market")


@pytest.fixture
def two_firms():
    return load_market("two_firms.market")


@pytest.fixture
def two_firms_split():
    return load_market("two_firms_split.market")


@pytest.fixture
def triangle_tu():
    return load_market("triangle_tu.market")


@pytest.fixture
def fan():
    return load_market("fan.market")


@pytest.fixture
def pair_chain():
    return load_market("pair_chain.market")


@pytest.fixture
def nested_chains():
    return load_market("nested_chains.market")


@pytest.fixture
def additive_market():
    return load_market("additive.market")


@pytest.fixture
def two_components():
    return load_market("two_components.market")


@pytest.fixture
def singleton_clash():
    return load_market("singleton_clash.market")


@pytest.fixture
def five_firms():
    return load_market("five_firms.market")


@pytest.fixture(params=MARKET_FILES)
def any_market(request):
    return load_market(request.param)
