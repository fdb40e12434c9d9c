"""Command-line interface.

Subcommands cover the whole library surface: divisor-lattice inspection,
capacity, polar transforms, averaged vectors, the exact asymptotic
distribution with its trace, simulation reports, and quotient channels.
Exact rational arithmetic is the default; --float opts into doubles where
that makes sense.  Exit codes: 0 success, 2 bad input, 3 resource guard,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import asymptotic, channel, number_theory as nt, simulate, transform
from .errors import InvariantError, ResourceLimitError, ValidationError


def _load(args) -> channel.ErasureDistribution:
    mode = "float" if getattr(args, "float_mode", False) else "exact"
    return channel.load_channel(args.input, mode)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _cmd_divisors(args) -> None:
    f = nt.factorize(args.q)
    lines = [
        " ".join(str(d) for d in nt.divisors(f)),
        f"q = {args.q} = {f}",
        f"omega = {nt.omega(f)}  Omega = {nt.big_omega(f)}  tau = {nt.tau(f)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)


_BASES = {"nats": "nats", "2": "bits", "q": "base_q"}


def _cmd_capacity(args) -> None:
    dist = _load(args)
    value = channel.capacity(dist, _BASES[args.base])
    _emit(f"{value!r}\n", args.out)


def _channel_json(dist: channel.ErasureDistribution) -> str:
    return json.dumps(channel.channel_to_dict(dist), indent=2) + "\n"


def _cmd_transform(args) -> None:
    dist = transform.apply_sequence(_load(args), args.seq)
    _emit(_channel_json(dist), args.out)


def _cmd_average(args) -> None:
    dist = _load(args)
    mu = transform.average_vector(dist, args.n)
    averaged = channel.ErasureDistribution(dist.factorization, mu, dist.mode)
    _emit(_channel_json(averaged), args.out)


def _format_mass(v: Fraction) -> str:
    return f"{str(v):>12}  {float(v):.6f}"


def _cmd_asymptotic(args) -> None:
    result = asymptotic.solve(_load(args))
    lines = [f"{'divisor':>8}  {'mass':>12}  {'decimal'}"]
    for d, v in zip(nt.divisors(result.factorization), result.mu_infinity):
        lines.append(f"{d:>8}  {_format_mass(v)}")
    _emit("\n".join(lines) + "\n", args.out)


def _trace_text(steps) -> str:
    lines = []
    for s in steps:
        lines.append(f"step {s.h + 1}: t = {s.t}  divisor {s.divisor}")
        for (i, j), lam, rho, branch in s.decisions:
            op = "<=" if lam <= rho else ">"
            lines.append(
                f"  compare lambda_{i},{j} = {lam} {op} rho_{i},{j} = {rho}  -> {branch}"
            )
        lines.append(
            f"  (k, l) = ({s.k}, {s.l})  beta = {s.beta}  "
            f"lambda = {s.lam}  rho = {s.rho}"
        )
        lines.append(f"  mass = {s.mass}  alpha = {s.alpha}")
    return "\n".join(lines) + "\n"


def _trace_json(steps) -> str:
    payload = [
        {
            "step": s.h,
            "t": list(s.t),
            "divisor": s.divisor,
            "decisions": [
                {"i": i, "j": j, "lambda": str(lam), "rho": str(rho), "branch": branch}
                for (i, j), lam, rho, branch in s.decisions
            ],
            "k": s.k,
            "l": s.l,
            "beta": str(s.beta),
            "lambda": str(s.lam),
            "rho": str(s.rho),
            "mass": str(s.mass),
            "alpha": str(s.alpha),
        }
        for s in steps
    ]
    return json.dumps(payload, indent=2) + "\n"


def _cmd_trace(args) -> None:
    steps = asymptotic.trace(_load(args))
    _emit(_trace_json(steps) if args.json else _trace_text(steps), args.out)


def _cmd_simulate(args) -> None:
    dist = _load(args)
    if args.mode == "exhaustive":
        report = simulate.enumerate_report(
            dist, args.n, args.delta, include_capacities=args.profile
        )
    else:
        if args.samples is None:
            raise ValidationError("monte_carlo mode requires --samples")
        report = simulate.monte_carlo(
            dist, args.n, args.samples, args.seed, args.delta,
            include_capacities=args.profile,
        )
    if args.profile:
        _emit(simulate.capacity_csv(report.capacities), args.out)
    else:
        _emit(simulate.report_csv(report), args.out)


def _cmd_homomorphism(args) -> None:
    dist = channel.homomorphism_channel(_load(args), args.d)
    _emit(_channel_json(dist), args.out)


def _add_io(p, float_ok: bool = True) -> None:
    p.add_argument("--input", required=True, help="channel JSON file")
    p.add_argument("--out", help="write output to this path instead of stdout")
    if float_ok:
        p.add_argument(
            "--float", dest="float_mode", action="store_true",
            help="use double precision instead of exact rationals",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasure-polar",
        description="Polarization of generalized erasure channels over Z/qZ",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divisors", help="list the divisor lattice of q")
    p.add_argument("q", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_divisors)

    p = sub.add_parser("capacity", help="symmetric capacity of a channel")
    _add_io(p)
    p.add_argument("--base", choices=sorted(_BASES), default="nats",
                   help="logarithm base: nats (default), 2, or q")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("transform", help="apply a sign sequence of polar transforms")
    _add_io(p)
    p.add_argument("--seq", default="", help="sign sequence over -/+, applied left to right")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("average", help="mass vector averaged over all 2^n sequences")
    _add_io(p)
    p.add_argument("-n", type=int, required=True, help="transform depth")
    p.set_defaults(func=_cmd_average)

    p = sub.add_parser("asymptotic", help="exact asymptotic distribution (rationals)")
    _add_io(p, float_ok=False)
    p.set_defaults(func=_cmd_asymptotic)

    p = sub.add_parser("trace", help="step-by-step record of the asymptotic solve")
    _add_io(p, float_ok=False)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("simulate", help="bucket synthetic-channel masses against a threshold")
    _add_io(p)
    p.add_argument("-n", type=int, required=True, help="transform depth")
    p.add_argument("--delta", type=float, default=0.01, help="bucket threshold in (0, 1/2]")
    p.add_argument("--mode", choices=["exhaustive", "monte_carlo"], default="exhaustive")
    p.add_argument("--samples", type=int, help="sample count (monte_carlo mode)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (monte_carlo mode)")
    p.add_argument("--profile", action="store_true",
                   help="emit the sorted capacity profile CSV instead of bucket fractions")
    p.add_argument("--threads", type=int, default=1,
                   help="reserved; results are deterministic and independent of this value")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("homomorphism", help="quotient channel on residues mod d")
    _add_io(p)
    p.add_argument("d", type=int)
    p.set_defaults(func=_cmd_homomorphism)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
