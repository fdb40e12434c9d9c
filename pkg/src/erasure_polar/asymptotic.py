"""Exact asymptotic distribution of the polarization process.

The limiting fraction of sign sequences whose synthetic channel becomes the
"reveal mod d" channel is computed by a chain walk over exponent tuples: at
each step the quadrant comparisons pick the coordinate to advance, and the
mass assigned at the current tuple is a closed-form combination of quadrant
sums of the *initial* vector.  Only additions and subtractions of input
masses are performed, never multiplication, so exact rationals are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import number_theory as nt
from .channel import ErasureDistribution
from .errors import InvariantError, ValidationError
from .transform import AggregateQuad

# Empirical ceiling for the instrumented addition count relative to
# omega(q) * big_omega(q) * tau(q); see operation_count().
OPERATION_BOUND_CONSTANT = 16


@dataclass(frozen=True)
class TraceStep:
    h: int                      # step index, 0-based
    t: tuple[int, ...]          # exponent tuple at entry
    divisor: int
    decisions: list             # ((i, j), lam, rho, branch) per inner comparison
    k: int
    l: int
    beta: Fraction
    lam: Fraction
    rho: Fraction
    mass: Fraction
    alpha: Fraction             # accumulated mass after this step


@dataclass(frozen=True)
class AsymptoticDistribution:
    factorization: nt.Factorization
    mu_infinity: tuple[Fraction, ...]       # indexed like divisors(factorization)
    chain: tuple[tuple[int, ...], ...]      # exponent tuples visited, in order
    trace: tuple[TraceStep, ...]
    operations: int = field(compare=False, default=0)

    @property
    def support(self) -> tuple[int, ...]:
        divs = nt.divisors(self.factorization)
        return tuple(d for d, v in zip(divs, self.mu_infinity) if v > 0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(nt.divisors(self.factorization), self.mu_infinity))


class _CountingAggregator:
    """Quadrant sums over the initial vector, counting mass additions."""

    def __init__(self, dist: ErasureDistribution):
        self.tuples = nt.exponent_tuples(dist.factorization)
        self.values = dist.values
        self.adds = 0

    def quad(self, i: int, j: int, a: int, b: int):
        theta = lam = rho = beta = Fraction(0)
        for t, v in zip(self.tuples, self.values):
            hi_i = t[i - 1] >= a
            hi_j = t[j - 1] >= b
            if hi_i and hi_j:
                theta += v
            elif hi_i:
                lam += v
            elif hi_j:
                rho += v
            else:
                beta += v
        self.adds += len(self.values)
        return theta, lam, rho, beta


def solve(dist: ErasureDistribution) -> AsymptoticDistribution:
    """Walk the divisor chain and assign the limiting mass at each stop.

    Requires an exact-mode input: the branch comparisons and the running
    accumulator must be exact or the chain can derail on near-ties.  Ties
    lam == rho take the advance-both branch (the comparison is <=).
    """
    if dist.mode != "exact":
        raise ValidationError("asymptotic solve requires an exact-mode distribution")
    f = dist.factorization
    m = f.m
    agg = _CountingAggregator(dist)
    divs = nt.divisors(f)
    mu = {d: Fraction(0) for d in divs}
    alpha = Fraction(0)
    t = [0] * m
    chain: list[tuple[int, ...]] = []
    trace: list[TraceStep] = []
    max_steps = nt.big_omega(f) + 1

    while 0 <= alpha < 1:
        if len(trace) >= max_steps:
            raise InvariantError("chain walk exceeded big_omega(q) + 1 steps")
        if any(tk > rk for tk, rk in zip(t, f.exponents)):
            raise InvariantError(f"chain left the lattice at t = {tuple(t)}")
        entry = tuple(t)
        chain.append(entry)
        i, j = 1, 2
        k = l = 0
        decisions = []
        while j <= m:
            _, lam, rho, _ = agg.quad(i, j, t[i - 1] + 1, t[j - 1] + 1)
            if lam <= rho:
                decisions.append(((i, j), lam, rho, "advance-both"))
                k, l = j, i
                i += 1
                j += 1
            else:
                decisions.append(((i, j), lam, rho, "advance-j"))
                k, l = i, i
                j += 1
        beta_lm, lam_lm, rho_lm, _ = _reorder(agg.quad(l, m, t[l - 1] + 1, t[m - 1] + 1))
        mass = beta_lm + min(lam_lm, rho_lm) - alpha
        agg.adds += 2  # the min-combine and the alpha subtraction
        if mass < 0:
            raise InvariantError(f"negative mass {mass} at t = {entry}")
        d = nt.divisor_of(f, entry)
        mu[d] = mass
        alpha += mass
        agg.adds += 1
        trace.append(
            TraceStep(
                h=len(trace),
                t=entry,
                divisor=d,
                decisions=decisions,
                k=k,
                l=l,
                beta=beta_lm,
                lam=lam_lm,
                rho=rho_lm,
                mass=mass,
                alpha=alpha,
            )
        )
        t[k - 1] += 1

    if alpha != 1:
        raise InvariantError(f"accumulated mass ended at {alpha}, expected 1")
    return AsymptoticDistribution(
        factorization=f,
        mu_infinity=tuple(mu[d] for d in divs),
        chain=tuple(chain),
        trace=tuple(trace),
        operations=agg.adds,
    )


def _reorder(quad):
    theta, lam, rho, beta = quad
    return beta, lam, rho, theta


def trace(dist: ErasureDistribution) -> tuple[TraceStep, ...]:
    """The solve run with all intermediate values recorded."""
    return solve(dist).trace


def aggregate_limits(dist: ErasureDistribution, i: int, j: int, a: int, b: int) -> AggregateQuad:
    """Closed-form limits of the averaged quadrant masses.

    Evaluated on the initial vector only:
        theta -> theta + min(lam, rho),  beta -> beta + min(lam, rho),
        lam -> max(lam - rho, 0),        rho -> max(rho - lam, 0).
    Because aggregation is linear, these equal the quadrant sums of the
    asymptotic distribution, which makes them an independent oracle for
    solve().
    """
    if dist.mode != "exact":
        raise ValidationError("aggregate limits require an exact-mode distribution")
    from .transform import aggregates  # local import to avoid a cycle at module load

    q0 = aggregates(dist, i, j, a, b)
    low = min(q0.lam, q0.rho)
    return AggregateQuad(
        theta=q0.theta + low,
        lam=max(q0.lam - q0.rho, Fraction(0)),
        rho=max(q0.rho - q0.lam, Fraction(0)),
        beta=q0.beta + low,
        i=i,
        j=j,
        a=a,
        b=b,
    )


def operation_count(dist: ErasureDistribution) -> int:
    """Mass additions/subtractions performed by solve on this input.

    Stays within OPERATION_BOUND_CONSTANT * omega(q) * big_omega(q) * tau(q);
    the bound is asserted here so regressions surface immediately.
    """
    result = solve(dist)
    f = dist.factorization
    bound = OPERATION_BOUND_CONSTANT * nt.omega(f) * nt.big_omega(f) * nt.tau(f)
    if result.operations > bound:
        raise InvariantError(
            f"solve used {result.operations} additions, above the bound {bound}"
        )
    return result.operations
