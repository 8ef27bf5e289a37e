import json
from pathlib import Path

import pytest

from src.core.harness import gen_corpus
from src.numerics.lut_builder import build_alt, build_mlt

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def golden_corpus():
    return json.loads((FIXTURES / "golden_corpus.json").read_text())


@pytest.fixture(scope="session")
def corpus42():
    """The 10,000-sample reproduction corpus."""
    return gen_corpus(42, 10000)


@pytest.fixture(scope="session")
def small_corpus():
    return gen_corpus(7, 1000)


@pytest.fixture(scope="session")
def mlt11():
    return build_mlt(11)


@pytest.fixture(scope="session")
def mlt12():
    return build_mlt(12)


@pytest.fixture(scope="session")
def alt12():
    return build_alt(12)

