from pathlib import Path

import numpy as np
import pytest

from lbhkit.constructions import corpus, twisted_corpus

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

CORPUS = corpus()
TWISTED = twisted_corpus()


def corpus_id(g):
    return g.name or "anon"


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)
