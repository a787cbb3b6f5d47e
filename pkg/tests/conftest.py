import random

import pytest

from kfold_sidon.verify import ResidueSet


def brute_trivial(coeffs, x):
    """Independent triviality test: every value class must have zero coefficient sum."""
    classes = {}
    for c, v in zip(coeffs, x):
        classes[v] = classes.get(v, 0) + c
    return all(s == 0 for s in classes.values())


def random_modular_instance(rng: random.Random, max_size=12, max_n=100, max_k=4):
    """Random (A, coeffs) in Z_N with every coefficient coprime to N."""
    from math import gcd

    n = rng.randint(2, max_n)
    units = [c for c in range(1, 3 * n) if gcd(c, n) == 1]
    k = rng.randint(1, min(max_k, len(units)))
    coeffs = sorted(rng.sample(units[: max(k, 12)], k))
    size = rng.randint(0, min(max_size, n))
    return ResidueSet.mod(rng.sample(range(n), size), n), coeffs


def random_interval_instance(rng: random.Random, max_size=12, max_n=100, max_k=4):
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_k)
    coeffs = sorted(rng.sample(range(1, 13), k))
    size = rng.randint(0, min(max_size, n))
    return ResidueSet.interval(rng.sample(range(1, n + 1), size), n), coeffs


@pytest.fixture
def rng():
    return random.Random(20140101)
