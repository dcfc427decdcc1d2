import random

import pytest
from hypothesis import settings, strategies as st

from treedeck.shapes import TreeShape, join, leaf

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


def build_random_shape(rng: random.Random, n: int) -> TreeShape:
    """Uniform-split random shape on n leaves (not uniform over shapes)."""
    if n == 1:
        return leaf()
    a = rng.randint(1, n - 1)
    return join(build_random_shape(rng, a), build_random_shape(rng, n - a))


@st.composite
def shapes(draw, min_size: int = 1, max_size: int = 14):
    def build(n: int) -> TreeShape:
        if n == 1:
            return leaf()
        a = draw(st.integers(1, n - 1))
        return join(build(a), build(n - a))

    return build(draw(st.integers(min_size, max_size)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xDECADE)
