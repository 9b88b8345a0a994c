import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from groovegan.core import builtin_spec, synth_corpus


@pytest.fixture(scope="session")
def small_corpus():
    """3 built-in genres, 20 patterns each; enough for structural tests."""
    return synth_corpus(builtin_spec(), n_per_genre=20, seed=101)


@pytest.fixture(scope="session")
def two_genre_corpus():
    return synth_corpus(builtin_spec(["house", "breaks"]), n_per_genre=30, seed=202)
