"""Prime factorization and the divisor lattice of q.

Every probability vector in this package is indexed by the divisors of q in
ascending numeric order.  A divisor d | q is identified with its exponent
tuple t (d = prod p_i^t_i), and gcd/lcm become componentwise min/max on
exponent tuples.  All functions here are pure and the types immutable, so
everything is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ValidationError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class Factorization:
    """q = prod primes[i] ** exponents[i], with primes strictly ascending.

    Always has m >= 2 entries: a prime-power (or prime) q is padded with one
    extra prime at exponent 0, which leaves the divisor set unchanged but
    keeps the two-index machinery downstream well defined.
    """

    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.primes)

    @property
    def q(self) -> int:
        return math.prod(p**r for p, r in zip(self.primes, self.exponents))

    def __str__(self) -> str:
        return " * ".join(f"{p}^{r}" for p, r in zip(self.primes, self.exponents))


def factorize(q: int) -> Factorization:
    """Factor q >= 2 by trial division, applying the exponent-0 pad rule."""
    if not isinstance(q, int) or q < 2:
        raise ValidationError(f"q must be an integer >= 2, got {q!r}")
    n = q
    primes: list[int] = []
    exponents: list[int] = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            r = 0
            while n % p == 0:
                n //= p
                r += 1
            primes.append(p)
            exponents.append(r)
        p += 1 if p == 2 else 2
    if n > 1:
        primes.append(n)
        exponents.append(1)
    if len(primes) == 1:
        pad = next(p for p in _SMALL_PRIMES if q % p != 0)
        primes.append(pad)
        exponents.append(0)
        if primes[0] > primes[1]:
            primes.reverse()
            exponents.reverse()
    return Factorization(tuple(primes), tuple(exponents))


def omega(f: Factorization) -> int:
    """Number of distinct prime factors (pad primes at exponent 0 excluded)."""
    return sum(1 for r in f.exponents if r >= 1)


def big_omega(f: Factorization) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(f.exponents)


def tau(f: Factorization) -> int:
    """Number of positive divisors."""
    return math.prod(r + 1 for r in f.exponents)


@lru_cache(maxsize=None)
def exponent_tuples(f: Factorization) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples 0 <= t <= r, ordered to match divisors(f)."""
    tuples = [t for t in product(*(range(r + 1) for r in f.exponents))]
    tuples.sort(key=lambda t: divisor_of(f, t))
    return tuple(tuples)


@lru_cache(maxsize=None)
def divisors(f: Factorization) -> tuple[int, ...]:
    """All tau(f) divisors of q in ascending numeric order."""
    return tuple(divisor_of(f, t) for t in exponent_tuples(f))


def divisor_of(f: Factorization, t: tuple[int, ...]) -> int:
    if len(t) != f.m:
        raise ValidationError(f"exponent tuple has length {len(t)}, expected {f.m}")
    return math.prod(p**ti for p, ti in zip(f.primes, t))


@lru_cache(maxsize=None)
def _tuple_index(f: Factorization) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(exponent_tuples(f))}


@lru_cache(maxsize=None)
def _divisor_index(f: Factorization) -> dict[int, int]:
    return {d: i for i, d in enumerate(divisors(f))}


def tuple_of(f: Factorization, d: int) -> tuple[int, ...]:
    """Exponent tuple of a divisor d | q."""
    idx = _divisor_index(f).get(d)
    if idx is None:
        raise ValidationError(f"{d} is not a divisor of q = {f.q}")
    return exponent_tuples(f)[idx]


def index_of_divisor(f: Factorization, d: int) -> int:
    idx = _divisor_index(f).get(d)
    if idx is None:
        raise ValidationError(f"{d} is not a divisor of q = {f.q}")
    return idx


def tuple_gcd(t: tuple[int, ...], u: tuple[int, ...]) -> tuple[int, ...]:
    """gcd on the divisor lattice: componentwise min."""
    if len(t) != len(u):
        raise ValidationError("exponent tuples come from different factorizations")
    return tuple(map(min, t, u))


def tuple_lcm(t: tuple[int, ...], u: tuple[int, ...]) -> tuple[int, ...]:
    """lcm on the divisor lattice: componentwise max."""
    if len(t) != len(u):
        raise ValidationError("exponent tuples come from different factorizations")
    return tuple(map(max, t, u))


@lru_cache(maxsize=None)
def pair_tables(f: Factorization) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """(gcd_index, lcm_index) tables over divisor indices.

    gcd_index[i][j] is the divisor index of gcd(d_i, d_j); likewise for lcm.
    These drive the polar transforms, which are O(tau^2) pair convolutions.
    """
    tuples = exponent_tuples(f)
    tidx = _tuple_index(f)
    n = len(tuples)
    gcd_tbl = tuple(
        tuple(tidx[tuple_gcd(tuples[i], tuples[j])] for j in range(n)) for i in range(n)
    )
    lcm_tbl = tuple(
        tuple(tidx[tuple_lcm(tuples[i], tuples[j])] for j in range(n)) for i in range(n)
    )
    return gcd_tbl, lcm_tbl
