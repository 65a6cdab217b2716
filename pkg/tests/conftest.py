import random

import pytest

from freegrowth.stallings import build_core
from freegrowth.words import sample_reduced


def random_generators(rng, r, max_gens=4, max_len=10):
    k = rng.randint(1, max_gens)
    return [sample_reduced(rng.randint(1, max_len), r, rng=rng)
            for _ in range(k)]


def random_core(rng, r=2, max_gens=4, max_len=10):
    return build_core(random_generators(rng, r, max_gens, max_len), r)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
