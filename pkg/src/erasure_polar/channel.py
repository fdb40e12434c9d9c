"""Divisor-indexed erasure channels over Z/qZ.

A channel is described entirely by a probability vector (eps_d)_{d|q}: with
probability eps_d the receiver learns the input modulo d.  Distributions are
immutable; the numeric mode ("exact" rationals or "float" doubles) is fixed
at construction and propagates through every derived distribution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import number_theory as nt
from .errors import ValidationError

FLOAT_SUM_TOL = 1e-12

Number = Fraction | float


@dataclass(frozen=True)
class ErasureDistribution:
    factorization: nt.Factorization
    values: tuple[Number, ...]
    mode: str  # "exact" | "float"

    @property
    def q(self) -> int:
        return self.factorization.q

    @property
    def divisors(self) -> tuple[int, ...]:
        return nt.divisors(self.factorization)

    def mass(self, d: int) -> Number:
        return self.values[nt.index_of_divisor(self.factorization, d)]

    def as_dict(self) -> dict[int, Number]:
        return dict(zip(self.divisors, self.values))

    def to_float(self) -> "ErasureDistribution":
        if self.mode == "float":
            return self
        return ErasureDistribution(
            self.factorization, tuple(float(v) for v in self.values), "float"
        )


def _coerce(value, mode: str) -> Number:
    if mode == "exact":
        if isinstance(value, float):
            raise ValidationError(
                "exact mode requires rational masses; got a float "
                f"({value!r}) - pass a Fraction or an 'a/b' string"
            )
        return Fraction(value)
    return float(value)


def new_distribution(
    q: int, masses: Mapping[int, object], mode: str = "exact"
) -> ErasureDistribution:
    """Validate and canonicalize a divisor -> mass map into a distribution.

    Every divisor of q must appear as a key (zeros must be explicit); masses
    must be nonnegative and sum to 1 (exactly in exact mode, within
    FLOAT_SUM_TOL in float mode).
    """
    if mode not in ("exact", "float"):
        raise ValidationError(f"unknown numeric mode {mode!r}")
    f = nt.factorize(q)
    divs = nt.divisors(f)
    extra = set(masses) - set(divs)
    if extra:
        raise ValidationError(f"keys {sorted(extra)} are not divisors of q = {q}")
    missing = set(divs) - set(masses)
    if missing:
        raise ValidationError(
            f"missing divisor keys {sorted(missing)}; zero masses must be explicit"
        )
    values = []
    for d in divs:
        v = _coerce(masses[d], mode)
        if v < 0:
            raise ValidationError(f"mass for divisor {d} is negative: {v}")
        values.append(v)
    total = sum(values)
    if mode == "exact":
        if total != 1:
            raise ValidationError(f"masses sum to {total}, expected exactly 1")
    elif abs(total - 1.0) > FLOAT_SUM_TOL:
        raise ValidationError(f"masses sum to {total!r}, expected 1 within {FLOAT_SUM_TOL}")
    return ErasureDistribution(f, tuple(values), mode)


def capacity(dist: ErasureDistribution, base: str = "nats") -> float:
    """Symmetric capacity sum_d eps_d * log(d), in the requested base.

    base_q divides by log(q), giving the normalized value in [0, 1].
    """
    nats = math.fsum(float(v) * math.log(d) for v, d in zip(dist.values, dist.divisors) if d > 1)
    if base == "nats":
        return nats
    if base == "bits":
        return nats / math.log(2)
    if base == "base_q":
        return nats / math.log(dist.q) if dist.q > 1 else 0.0
    raise ValidationError(f"unknown capacity base {base!r}")


def homomorphism_channel(dist: ErasureDistribution, d: int) -> ErasureDistribution:
    """Quotient channel on residues mod d, for d | q.

    Learning the input mod d2 about an input class mod d reveals exactly the
    input mod gcd(d2, d), so the quotient is again an erasure channel with
    masses projected along gcd(., d).
    """
    f = dist.factorization
    if dist.q % d != 0:
        raise ValidationError(f"{d} does not divide q = {dist.q}")
    if d == dist.q:
        return dist
    # d = 1 has no valid Factorization of its own; build the trivial lattice.
    sub = nt.factorize(d) if d > 1 else nt.Factorization(f.primes[:2], (0, 0))
    zero: Number = Fraction(0) if dist.mode == "exact" else 0.0
    out = {d1: zero for d1 in nt.divisors(sub)}
    for d2, v in zip(dist.divisors, dist.values):
        out[math.gcd(d2, d)] += v
    return ErasureDistribution(sub, tuple(out[d1] for d1 in nt.divisors(sub)), dist.mode)


def homomorphism_capacity(dist: ErasureDistribution, d: int, base: str = "nats") -> float:
    return capacity(homomorphism_channel(dist, d), base)


# ---------------------------------------------------------------------------
# Channel file format:  {"q": int, "epsilon": {"<divisor>": "num/den" | float}}
# ---------------------------------------------------------------------------

def _parse_mass(raw, mode: str):
    if isinstance(raw, str):
        try:
            return Fraction(raw) if mode == "exact" else float(Fraction(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse mass {raw!r}: {exc}") from exc
    if isinstance(raw, (int, float)):
        if mode == "exact" and isinstance(raw, float):
            raise ValidationError(
                f"exact mode requires 'num/den' strings or integers, got {raw!r}"
            )
        return raw
    raise ValidationError(f"mass must be a string or number, got {type(raw).__name__}")


def load_channel_dict(obj: dict, mode: str = "exact") -> ErasureDistribution:
    if not isinstance(obj, dict) or "q" not in obj or "epsilon" not in obj:
        raise ValidationError('channel JSON must be {"q": ..., "epsilon": {...}}')
    q = obj["q"]
    if not isinstance(q, int):
        raise ValidationError(f'field "q" must be an integer, got {q!r}')
    eps = obj["epsilon"]
    if not isinstance(eps, dict):
        raise ValidationError('field "epsilon" must be an object')
    masses = {}
    for key, raw in eps.items():
        try:
            div = int(key)
        except ValueError as exc:
            raise ValidationError(f"epsilon key {key!r} is not an integer") from exc
        masses[div] = _parse_mass(raw, mode)
    return new_distribution(q, masses, mode)


def load_channel(path: str, mode: str = "exact") -> ErasureDistribution:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read channel file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return load_channel_dict(obj, mode)


def channel_to_dict(dist: ErasureDistribution) -> dict:
    eps = {}
    for d, v in zip(dist.divisors, dist.values):
        eps[str(d)] = str(Fraction(v)) if dist.mode == "exact" else float(v)
    return {"q": dist.q, "epsilon": eps}


def dump_channel(dist: ErasureDistribution, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(channel_to_dict(dist), fh, indent=2)
        fh.write("\n")
