import random
from fractions import Fraction

import pytest

import erasure_polar.asymptotic as asym
import erasure_polar.channel as ch
import erasure_polar.number_theory as nt
import erasure_polar.transform as tr
from erasure_polar import new_distribution
from erasure_polar.errors import ValidationError

from conftest import all_aggregate_contexts, random_exact_distribution


def point_mass(q, at):
    f = nt.factorize(q)
    return new_distribution(q, {d: int(d == at) for d in nt.divisors(f)})


def test_solve_refuses_float_mode(example4500):
    with pytest.raises(ValidationError, match="exact"):
        asym.solve(example4500.to_float())
    with pytest.raises(ValidationError, match="exact"):
        asym.aggregate_limits(example4500.to_float(), 1, 2, 1, 1)


def test_solve_bec():
    for e in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
        dist = new_distribution(2, {1: e, 2: 1 - e})
        assert asym.solve(dist).as_dict() == {1: e, 2: 1 - e}


def test_solve_point_masses():
    for q in (12, 360):
        for d in nt.divisors(nt.factorize(q)):
            result = asym.solve(point_mass(q, d))
            assert result.as_dict()[d] == 1
            assert sum(result.mu_infinity) == 1
            assert result.support == (d,)


def test_solve_example4500(example4500):
    result = asym.solve(example4500)
    assert {d: v for d, v in result.as_dict().items() if v} == {
        1: Fraction(29, 150),
        5: Fraction(1, 15),
        15: Fraction(11, 150),
        30: Fraction(9, 50),
        150: Fraction(11, 75),
        450: Fraction(1, 150),
        900: Fraction(7, 75),
        4500: Fraction(6, 25),
    }
    assert result.support == (1, 5, 15, 30, 150, 450, 900, 4500)


def test_chain_structure(example4500):
    rng = random.Random(77)
    for dist in [example4500] + [random_exact_distribution(q, rng) for q in (12, 360, 4500)]:
        result = asym.solve(dist)
        f = dist.factorization
        assert len(result.chain) <= nt.big_omega(f) + 1
        assert result.chain[0] == (0,) * f.m
        for prev, cur in zip(result.chain, result.chain[1:]):
            diffs = [c - p for p, c in zip(prev, cur)]
            assert sum(diffs) == 1 and all(x in (0, 1) for x in diffs)
        support_tuples = {nt.tuple_of(f, d) for d in result.support}
        assert support_tuples <= set(result.chain)


def test_trace_alpha_reaches_one(example4500):
    steps = asym.trace(example4500)
    alphas = [s.alpha for s in steps]
    assert alphas == sorted(alphas)
    assert alphas[-1] == 1
    masses = {s.divisor: s.mass for s in steps}
    assert masses == {d: v for d, v in asym.solve(example4500).as_dict().items() if v}


def test_trace_records_decisions(example4500):
    first = asym.trace(example4500)[0]
    assert first.t == (0, 0, 0)
    assert [d[0] for d in first.decisions] == [(1, 2), (2, 3)]
    assert all(d[3] == "advance-both" for d in first.decisions)
    assert (first.k, first.l) == (3, 2)


def test_aggregate_limits_tie_kills_both_sides():
    dist = new_distribution(
        12,
        {1: Fraction(1, 4), 2: Fraction(1, 4), 3: Fraction(1, 4),
         4: 0, 6: 0, 12: Fraction(1, 4)},
    )
    quad = tr.aggregates(dist, 1, 2, 1, 1)
    assert quad.lam == quad.rho
    limit = asym.aggregate_limits(dist, 1, 2, 1, 1)
    assert limit.lam == 0 and limit.rho == 0
    assert limit.theta + limit.beta == 1


def test_aggregate_limits_example4500(example4500):
    limit = asym.aggregate_limits(example4500, 2, 3, 1, 1)
    quad = tr.aggregates(example4500, 2, 3, 1, 1)
    assert quad.lam == Fraction(1, 6) and quad.rho == Fraction(7, 30)
    assert limit.theta == quad.theta + Fraction(1, 6)
    assert limit.beta == quad.beta + Fraction(1, 6)
    assert limit.lam == 0
    assert limit.rho == Fraction(7, 30) - Fraction(1, 6)


def test_limit_oracle_matches_solve(example4500):
    rng = random.Random(3)
    for dist in [example4500] + [random_exact_distribution(q, rng) for q in (12, 36)]:
        mu = ch.ErasureDistribution(
            dist.factorization, asym.solve(dist).mu_infinity, "exact"
        )
        for ctx in all_aggregate_contexts(dist.factorization):
            assert tr.aggregates(mu, *ctx) == asym.aggregate_limits(dist, *ctx)


def test_enumerated_average_approaches_limit():
    # max_d |mu_d^(n) - mu_d^(inf)| is nonincreasing over n = 0..12 and
    # small by n = 12 (the limit itself is only guaranteed asymptotically).
    # The averages are enumerated in double precision: exact depth-12
    # rationals have ~10^4-digit denominators, and the 0.02 tolerance is
    # far above float rounding.
    rng = random.Random(41)
    for q in (12, 36):
        dist = random_exact_distribution(q, rng)
        limit = [float(v) for v in asym.solve(dist).mu_infinity]
        gaps = []
        for mu in tr.average_vectors(dist.to_float(), 12):
            gaps.append(max(abs(a - b) for a, b in zip(mu, limit)))
        assert all(x >= y - 1e-12 for x, y in zip(gaps, gaps[1:]))
        assert gaps[-1] < 0.02


def test_operation_count_within_bound(example4500):
    count = asym.operation_count(example4500)
    f = example4500.factorization
    assert 0 < count <= asym.OPERATION_BOUND_CONSTANT * 3 * 7 * 36
    dist = new_distribution(2, {1: Fraction(1, 2), 2: Fraction(1, 2)})
    assert asym.operation_count(dist) <= asym.OPERATION_BOUND_CONSTANT * 1 * 1 * 2
