"""Empirical verification of multilevel polarization.

Two modes over the depth-n transform tree: exhaustive depth-first enumeration
of all 2^n sign sequences (exact rationals when the input is exact), and
seeded Monte Carlo sampling of uniform sign sequences (float only, vectorized
with numpy).  Each sequence's mass vector is bucketed per divisor against a
threshold delta, and optionally reduced to its capacity in nats.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import number_theory as nt
from .channel import ErasureDistribution, capacity
from .errors import ResourceLimitError, ValidationError
from .transform import polar_minus, polar_plus

# Exhaustive mode refuses jobs where 2^n * tau(q)^2 exceeds this many
# divisor-pair operations.
ENUMERATE_WORK_GUARD = 1 << 28

# The sampling PRNG; its identity is part of the reproducibility contract.
GENERATOR_NAME = "numpy.random.Generator(PCG64)"

_MC_CHUNK = 8192


@dataclass(frozen=True)
class SimulationReport:
    """Per-divisor bucket fractions over the explored sign sequences.

    For each divisor d, the three fractions count sequences with mass
    below delta, in [delta, 1 - delta], and above 1 - delta; they sum to 1
    per divisor (exactly in exact mode, to within rounding in float mode).
    """

    q: int
    divisors: tuple[int, ...]
    n: int
    delta: float
    mode: str                    # "exhaustive" | "monte_carlo"
    samples: int                 # 2^n for exhaustive runs
    seed: int | None             # None for exhaustive runs
    generator: str | None        # PRNG identity, None for exhaustive runs
    frac_below: tuple
    frac_intermediate: tuple
    frac_above: tuple
    capacities: tuple[float, ...] | None = None  # sorted, in nats


def _check_common(n: int, delta: float) -> None:
    if n < 1:
        raise ValidationError(f"depth n must be >= 1, got {n}")
    if not (0 < delta <= 0.5):
        raise ValidationError(f"delta must lie in (0, 1/2], got {delta}")


def enumerate_report(
    dist: ErasureDistribution,
    n: int,
    delta: float,
    include_capacities: bool = False,
) -> SimulationReport:
    """Exact bucket fractions over all 2^n sign sequences.

    A depth-first traversal reuses each parent vector for both children, so
    memory stays at one vector per level; total work is 2^n * tau(q)^2
    divisor-pair products, guarded by ENUMERATE_WORK_GUARD.
    """
    _check_common(n, delta)
    width = len(dist.values)
    work = (1 << n) * width * width
    if work > ENUMERATE_WORK_GUARD:
        raise ResourceLimitError(
            f"2^{n} sequences over {width} divisors need {work} pair products, "
            f"above the guard of {ENUMERATE_WORK_GUARD}"
        )
    exact = dist.mode == "exact"
    # Comparing exact masses against the binary value of delta keeps the
    # buckets deterministic across platforms.
    lo = Fraction(delta) if exact else delta
    hi = 1 - lo
    below = [0] * width
    above = [0] * width
    caps: list[float] = [] if include_capacities else None

    def visit(v: ErasureDistribution, depth: int) -> None:
        if depth == n:
            for k, x in enumerate(v.values):
                if x < lo:
                    below[k] += 1
                elif x > hi:
                    above[k] += 1
            if caps is not None:
                caps.append(capacity(v))
            return
        visit(polar_minus(v), depth + 1)
        visit(polar_plus(v), depth + 1)

    visit(dist, 0)
    total = 1 << n
    frac = lambda c: Fraction(c, total) if exact else c / total
    return SimulationReport(
        q=dist.q,
        divisors=dist.divisors,
        n=n,
        delta=delta,
        mode="exhaustive",
        samples=total,
        seed=None,
        generator=None,
        frac_below=tuple(frac(c) for c in below),
        frac_intermediate=tuple(frac(total - b - a) for b, a in zip(below, above)),
        frac_above=tuple(frac(c) for c in above),
        capacities=tuple(sorted(caps)) if caps is not None else None,
    )


def _scatter_matrices(f: nt.Factorization) -> tuple[np.ndarray, np.ndarray]:
    """One-hot (tau^2, tau) matrices sending flattened outer products of a
    mass vector to its gcd- and lcm-convolved images."""
    gcd_tbl, lcm_tbl = nt.pair_tables(f)
    width = nt.tau(f)
    minus = np.zeros((width * width, width))
    plus = np.zeros((width * width, width))
    for i in range(width):
        for j in range(width):
            minus[i * width + j, gcd_tbl[i][j]] = 1.0
            plus[i * width + j, lcm_tbl[i][j]] = 1.0
    return minus, plus


def monte_carlo(
    dist: ErasureDistribution,
    n: int,
    samples: int,
    seed: int,
    delta: float,
    include_capacities: bool = False,
) -> SimulationReport:
    """Bucket fractions over i.i.d. uniform sign sequences.

    Float-only and fully determined by (seed, samples, n, input): one PCG64
    stream drives every sign bit in a fixed order.  Sample batches are
    processed as (batch, tau^2) outer products against the one-hot scatter
    matrices, so the per-step cost is a pair of dense matmuls.
    """
    _check_common(n, delta)
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    fdist = dist.to_float()
    width = len(fdist.values)
    m_minus, m_plus = _scatter_matrices(fdist.factorization)
    logs = np.array([math.log(d) for d in fdist.divisors])
    rng = np.random.Generator(np.random.PCG64(seed))
    base = np.array(fdist.values)

    below = np.zeros(width, dtype=np.int64)
    above = np.zeros(width, dtype=np.int64)
    caps: list[float] = [] if include_capacities else None
    hi = 1.0 - delta

    done = 0
    while done < samples:
        batch = min(_MC_CHUNK, samples - done)
        signs = rng.integers(0, 2, size=(batch, n), dtype=np.int8)
        v = np.broadcast_to(base, (batch, width)).copy()
        for step in range(n):
            w = (v[:, :, None] * v[:, None, :]).reshape(batch, width * width)
            plus_rows = signs[:, step] == 1
            v = np.empty_like(v)
            v[plus_rows] = w[plus_rows] @ m_plus
            v[~plus_rows] = w[~plus_rows] @ m_minus
        below += (v < delta).sum(axis=0)
        above += (v > hi).sum(axis=0)
        if caps is not None:
            caps.extend((v @ logs).tolist())
        done += batch

    return SimulationReport(
        q=dist.q,
        divisors=fdist.divisors,
        n=n,
        delta=delta,
        mode="monte_carlo",
        samples=samples,
        seed=seed,
        generator=GENERATOR_NAME,
        frac_below=tuple(c / samples for c in below.tolist()),
        frac_intermediate=tuple(
            (samples - b - a) / samples for b, a in zip(below.tolist(), above.tolist())
        ),
        frac_above=tuple(c / samples for c in above.tolist()),
        capacities=tuple(sorted(caps)) if caps is not None else None,
    )


def capacity_profile(
    dist: ErasureDistribution,
    n: int,
    mode: str = "exhaustive",
    samples: int | None = None,
    seed: int | None = None,
    delta: float = 0.5,
) -> tuple[float, ...]:
    """Capacities I(V^s) in nats for each explored sequence, ascending.

    Plotted as a staircase, the plateau widths approximate the asymptotic
    mass at each divisor and the plateau heights sit at ln d.
    """
    if mode == "exhaustive":
        report = enumerate_report(dist, n, delta, include_capacities=True)
    elif mode == "monte_carlo":
        if samples is None or seed is None:
            raise ValidationError("monte_carlo profiles need samples and seed")
        report = monte_carlo(dist, n, samples, seed, delta, include_capacities=True)
    else:
        raise ValidationError(f"unknown simulation mode {mode!r}")
    return report.capacities


def report_csv(report: SimulationReport) -> str:
    """CSV rendering: divisor, frac_below_delta, frac_intermediate, frac_above."""
    buf = io.StringIO()
    buf.write("divisor,frac_below_delta,frac_intermediate,frac_above\n")
    for d, lo, mid, hi in zip(
        report.divisors, report.frac_below, report.frac_intermediate, report.frac_above
    ):
        buf.write(f"{d},{_cell(lo)},{_cell(mid)},{_cell(hi)}\n")
    return buf.getvalue()


def capacity_csv(capacities) -> str:
    """CSV rendering of a sorted capacity profile: rank, capacity_nats."""
    buf = io.StringIO()
    buf.write("rank,capacity_nats\n")
    for rank, c in enumerate(capacities):
        buf.write(f"{rank},{float(c)!r}\n")
    return buf.getvalue()


def _cell(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(float(x))
