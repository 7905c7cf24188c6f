import os
import sys

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from d0leq import Alphabet, Morphism, MorphismTower  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SYMBOLS = "abcd"


@st.composite
def morphisms(draw, n=None, min_len=0, max_len=4):
    if n is None:
        n = draw(st.integers(1, 3))
    alphabet = Alphabet(tuple(SYMBOLS[:n]))
    letter = st.sampled_from(alphabet.symbols)
    images = tuple(
        "".join(draw(st.lists(letter, min_size=min_len, max_size=max_len))) for _ in range(n)
    )
    return Morphism(alphabet, images)


@st.composite
def morphism_with_word(draw, min_len=0, max_len=4, max_word=8):
    m = draw(morphisms(min_len=min_len, max_len=max_len))
    w = "".join(draw(st.lists(st.sampled_from(m.alphabet.symbols), max_size=max_word)))
    return m, w


@st.composite
def towers(draw, n, max_layers=3, max_len=3):
    k = draw(st.integers(1, max_layers))
    return MorphismTower(tuple(draw(morphisms(n=n, max_len=max_len)) for _ in range(k)))


@pytest.fixture
def thue_morse():
    return Morphism.from_dict({"a": "ab", "b": "ba"})


@pytest.fixture
def tm_variant():
    return Morphism.from_dict({"a": "ab", "b": "aa"})


@pytest.fixture
def fib():
    return Morphism.from_dict({"a": "ab", "b": "a"})


@pytest.fixture
def fib2():
    return Morphism.from_dict({"a": "aba", "b": "ab"})
