import random

import pytest
from hypothesis import strategies as st

from fruitcheck.quad_field import QuadField

SPLIT_TS = (17, 33, 41, -7)


def naive_squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def elements(field: QuadField, lo: int = -10**6, hi: int = 10**6):
    v = st.just(0) if field.is_rational else st.integers(lo, hi)
    return st.builds(field, st.integers(lo, hi), v)


def random_element(rng: random.Random, field: QuadField, size: int = 10**9):
    v = 0 if field.is_rational else rng.randint(-size, size)
    return field(rng.randint(-size, size), v)


@pytest.fixture
def rng():
    return random.Random(20261018)
