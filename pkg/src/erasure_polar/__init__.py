"""Exact polarization analysis for generalized erasure channels over Z/qZ.

A channel is a probability vector indexed by the divisors of q; the polar
transforms are gcd/lcm self-convolutions of that vector, and the limiting
multilevel-polarization distribution is computed exactly with rational
arithmetic.
"""

from .asymptotic import AsymptoticDistribution, aggregate_limits, operation_count, solve, trace
from .channel import (
    ErasureDistribution,
    capacity,
    homomorphism_capacity,
    homomorphism_channel,
    load_channel,
    load_channel_dict,
    new_distribution,
)
from .errors import InvariantError, ResourceLimitError, ValidationError
from .simulate import SimulationReport, capacity_profile, enumerate_report, monte_carlo
from .transform import (
    AggregateQuad,
    aggregate_step,
    aggregates,
    apply_sequence,
    average_vector,
    polar_minus,
    polar_plus,
    sequence_index,
)

__all__ = [
    "AggregateQuad",
    "AsymptoticDistribution",
    "ErasureDistribution",
    "InvariantError",
    "ResourceLimitError",
    "SimulationReport",
    "ValidationError",
    "aggregate_limits",
    "aggregate_step",
    "aggregates",
    "apply_sequence",
    "average_vector",
    "capacity",
    "capacity_profile",
    "enumerate_report",
    "homomorphism_capacity",
    "homomorphism_channel",
    "load_channel",
    "load_channel_dict",
    "monte_carlo",
    "new_distribution",
    "operation_count",
    "polar_minus",
    "polar_plus",
    "sequence_index",
    "solve",
    "trace",
]

__version__ = "0.1.0"
