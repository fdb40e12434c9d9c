"""Polar transforms on divisor-indexed mass vectors, and aggregate statistics.

The minus transform is a gcd self-convolution of the mass vector, the plus
transform an lcm self-convolution.  Both are plain O(tau^2) double loops over
divisor pairs; tau(q) stays small at desk scale, so clarity and exactness win
over anything fancier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import number_theory as nt
from .channel import ErasureDistribution
from .errors import ResourceLimitError, ValidationError

AVERAGE_DEPTH_GUARD = 24

MINUS = "-"
PLUS = "+"


def _validate_sequence(s: str) -> None:
    bad = set(s) - {MINUS, PLUS}
    if bad:
        raise ValidationError(f"sign sequence may contain only '-' and '+', got {sorted(bad)}")


def _convolve(dist: ErasureDistribution, table) -> ErasureDistribution:
    v = dist.values
    n = len(v)
    zero = Fraction(0) if dist.mode == "exact" else 0.0
    out = [zero] * n
    for i in range(n):
        vi = v[i]
        if not vi:
            continue
        row = table[i]
        # diagonal once, off-diagonal pairs doubled
        out[row[i]] += vi * vi
        for j in range(i + 1, n):
            vj = v[j]
            if vj:
                out[row[j]] += 2 * vi * vj
    return ErasureDistribution(dist.factorization, tuple(out), dist.mode)


def polar_minus(dist: ErasureDistribution) -> ErasureDistribution:
    """Worse channel: eps_d^- = sum over gcd(d1, d2) = d of eps_d1 * eps_d2."""
    gcd_tbl, _ = nt.pair_tables(dist.factorization)
    return _convolve(dist, gcd_tbl)


def polar_plus(dist: ErasureDistribution) -> ErasureDistribution:
    """Better channel: eps_d^+ = sum over lcm(d1, d2) = d of eps_d1 * eps_d2."""
    _, lcm_tbl = nt.pair_tables(dist.factorization)
    return _convolve(dist, lcm_tbl)


def apply_sequence(dist: ErasureDistribution, s: str) -> ErasureDistribution:
    """Apply the sign sequence left to right (s[0] first); '' is the identity."""
    _validate_sequence(s)
    for sign in s:
        dist = polar_minus(dist) if sign == MINUS else polar_plus(dist)
    return dist


def sequence_index(s: str) -> int:
    """Binary rank of a sign sequence: '-' is a 0 bit, '+' a 1 bit, s[0] the MSB."""
    _validate_sequence(s)
    w = 0
    for sign in s:
        w = 2 * w + (1 if sign == PLUS else 0)
    return w


@dataclass(frozen=True)
class AggregateQuad:
    """Quadrant masses of a vector split at exponent thresholds (a, b).

    theta: t_i >= a and t_j >= b;  lam: t_i >= a, t_j < b;
    rho: t_i < a, t_j >= b;        beta: both below.
    Indices i < j are 1-based prime positions; the four masses sum to 1.
    """

    theta: object
    lam: object
    rho: object
    beta: object
    i: int
    j: int
    a: int
    b: int


def _check_indices(f: nt.Factorization, i: int, j: int, a: int, b: int) -> None:
    if not (1 <= i < j <= f.m):
        raise ValidationError(f"need 1 <= i < j <= {f.m}, got (i, j) = ({i}, {j})")
    if a < 1 or b < 1:
        raise ValidationError(f"thresholds must satisfy a, b >= 1, got ({a}, {b})")


def aggregates(dist: ErasureDistribution, i: int, j: int, a: int, b: int) -> AggregateQuad:
    f = dist.factorization
    _check_indices(f, i, j, a, b)
    zero = Fraction(0) if dist.mode == "exact" else 0.0
    theta = lam = rho = beta = zero
    for t, v in zip(nt.exponent_tuples(f), dist.values):
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
    return AggregateQuad(theta, lam, rho, beta, i, j, a, b)


def aggregate_step(quad: AggregateQuad, sign: str) -> AggregateQuad:
    """One-step closed-form recursion for the quadrant masses.

    Mirrors the transform exactly: applying this map commutes with taking
    aggregates of the transformed vector.
    """
    t, l, r, b = quad.theta, quad.lam, quad.rho, quad.beta
    if sign == MINUS:
        theta = t * t
        lam = l * (l + 2 * t)
        rho = r * (r + 2 * t)
        beta = b * (2 - b) + 2 * l * r
    elif sign == PLUS:
        theta = t * (2 - t) + 2 * l * r
        lam = l * (l + 2 * b)
        rho = r * (r + 2 * b)
        beta = b * b
    else:
        raise ValidationError(f"sign must be '-' or '+', got {sign!r}")
    return AggregateQuad(theta, lam, rho, beta, quad.i, quad.j, quad.a, quad.b)


def average_vectors(dist: ErasureDistribution, n: int) -> list[tuple]:
    """Per-depth averages mu^(0..n): mu^(k) = 2^-k sum over all 2^k sequences.

    One depth-first traversal of the transform tree; memory is one vector per
    level.  No closed form exists (the recursion is nonlinear), hence the
    enumeration and the depth guard.
    """
    if n < 0:
        raise ValidationError(f"depth n must be >= 0, got {n}")
    if n > AVERAGE_DEPTH_GUARD:
        raise ResourceLimitError(
            f"depth {n} exceeds the guard of {AVERAGE_DEPTH_GUARD} transform steps"
        )
    width = len(dist.values)
    zero = Fraction(0) if dist.mode == "exact" else 0.0
    sums = [[zero] * width for _ in range(n + 1)]

    def visit(v: ErasureDistribution, depth: int) -> None:
        row = sums[depth]
        for k, x in enumerate(v.values):
            row[k] += x
        if depth < n:
            visit(polar_minus(v), depth + 1)
            visit(polar_plus(v), depth + 1)

    visit(dist, 0)
    out = []
    for depth, row in enumerate(sums):
        scale = Fraction(1, 2**depth) if dist.mode == "exact" else 0.5**depth
        out.append(tuple(x * scale for x in row))
    return out


def average_vector(dist: ErasureDistribution, n: int) -> tuple:
    """mu^(n), the mass vector averaged over all 2^n sign sequences."""
    return average_vectors(dist, n)[-1]
