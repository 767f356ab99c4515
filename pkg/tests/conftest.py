import random

import pytest

from idealdec import _kernels
from idealdec.arith import QQ
from idealdec.mpoly import MultiPoly


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # pay the one-time JIT cost before any timed assertion runs
    _kernels.warmup()


def random_poly(n, deg, rng, density=0.6, coeff_bound=5):
    """Random rational polynomial of exact total degree deg."""
    from itertools import product
    terms = {}
    for e in product(range(deg + 1), repeat=n):
        if sum(e) <= deg and rng.random() < density:
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[e] = c
    lead = tuple([deg] + [0] * (n - 1))
    terms[lead] = rng.randint(1, coeff_bound)
    return MultiPoly(terms, QQ, n)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
