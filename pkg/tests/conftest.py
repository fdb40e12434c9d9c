import random
from fractions import Fraction

import pytest

import erasure_polar.number_theory as nt
from erasure_polar import new_distribution

# The worked q = 4500 example used throughout: masses proportional to
# 0..9, 0..9, 0..9, 0..5 over the 36 divisors in ascending order, in units
# of 1/150.
EXAMPLE_4500_NUMERATORS = tuple(range(10)) * 3 + tuple(range(6))


def example4500_masses():
    f = nt.factorize(4500)
    return {
        d: Fraction(v, 150)
        for d, v in zip(nt.divisors(f), EXAMPLE_4500_NUMERATORS)
    }


@pytest.fixture(scope="session")
def example4500():
    return new_distribution(4500, example4500_masses())


def random_exact_distribution(q: int, rng: random.Random):
    """A random rational probability vector over the divisors of q."""
    f = nt.factorize(q)
    divs = nt.divisors(f)
    weights = [rng.randrange(0, 20) for _ in divs]
    if sum(weights) == 0:
        weights[rng.randrange(len(divs))] = 1
    total = sum(weights)
    return new_distribution(q, {d: Fraction(w, total) for d, w in zip(divs, weights)})


def all_aggregate_contexts(f: nt.Factorization):
    """Every valid (i, j, a, b) for the factorization: 1 <= i < j <= m,
    1 <= a <= r_i, 1 <= b <= r_j (thresholds above r give empty upper sets
    and are exercised separately)."""
    out = []
    for i in range(1, f.m + 1):
        for j in range(i + 1, f.m + 1):
            for a in range(1, max(f.exponents[i - 1], 1) + 1):
                for b in range(1, max(f.exponents[j - 1], 1) + 1):
                    out.append((i, j, a, b))
    return out
