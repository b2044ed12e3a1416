import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from stabset.morphisms import Morphism  # noqa: E402
from stabset.words import Alphabet  # noqa: E402

AB = Alphabet("ab")
ABC = Alphabet("abc")


def words(letters="ab", min_size=0, max_size=12):
    return st.text(alphabet=letters, min_size=min_size, max_size=max_size)


@st.composite
def morphisms(draw, letters="ab", max_image=4):
    imgs = tuple(draw(words(letters, 1, max_image)) for _ in letters)
    return Morphism(Alphabet(letters), imgs)


@pytest.fixture
def phi():
    return Morphism.from_dict(AB, {"a": "ab", "b": "a"})


@pytest.fixture
def f1():
    return Morphism.from_dict(ABC, {"a": "a", "b": "bac", "c": "baca"})


@pytest.fixture
def f2():
    return Morphism.from_dict(AB, {"a": "ba", "b": "ab"})


@pytest.fixture
def mu():
    return Morphism.from_dict(AB, {"a": "ab", "b": "ba"})
