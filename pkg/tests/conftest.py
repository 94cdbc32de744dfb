import random

import pytest

from gausscode.word import from_letters


def random_word(rng: random.Random, n: int):
    letters = list(range(n)) * 2
    rng.shuffle(letters)
    return from_letters(letters)


@pytest.fixture
def rng():
    return random.Random(20261016)
