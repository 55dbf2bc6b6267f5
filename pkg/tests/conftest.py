import random

import pytest

from coinctrace import Alphabet, Endomorphism, Word


@pytest.fixture
def rank2():
    return Alphabet(["a", "b"])


@pytest.fixture
def rank3():
    return Alphabet(["a", "b", "c"])


@pytest.fixture
def example2(rank3):
    """The rank-3 pair used throughout: trace -a -3a^2 -acb^-1, Nielsen 3."""
    phi = Endomorphism.from_strings(rank3, "a c b^-1", "a b", "b")
    psi = Endomorphism.from_strings(rank3, "a^-1 c b^-1", "c", "b^-1 a")
    return phi, psi


def random_word(rng: random.Random, alphabet: Alphabet, max_len: int, min_len: int = 0) -> Word:
    """Uniform random *unreduced* word; callers reduce if they need to."""
    n = rng.randint(min_len, max_len)
    letters = []
    for _ in range(n):
        g = rng.randrange(len(alphabet))
        s = rng.choice((1, -1))
        letters.append((g, s))
    w = Word(alphabet, ())
    for g, s in letters:
        w = w.concat(alphabet.gen(g, s))
    return w


def random_reduced_word(rng, alphabet, max_len, min_len=0):
    return random_word(rng, alphabet, max_len, min_len).reduce()


def random_endo(rng: random.Random, alphabet: Alphabet, max_len: int, min_len: int = 0) -> Endomorphism:
    images = [random_word(rng, alphabet, max_len, min_len).reduce() for _ in alphabet.names]
    return Endomorphism(alphabet, images)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
