"""Command-line entry point.

Commands: coin-toss, entangle, factor, state. Trials run on independent
per-trial contexts with seeds derived from the master seed, so a fixed
--seed pins the entire output. Exit status: 0 success, 1 usage,
2 precondition failure, 3 resource exhaustion.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

import numpy as np

from .engine import HARD_QUBIT_LIMIT, SimulationContext, trial_seed
from .errors import (
    InvalidParameterError,
    QubitLimitExceededError,
    ResourceExhaustedError,
    SharqError,
)
from .gates import NAMED_STATES, hadamard, prepare_named_state
from .shor import shor_factor

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_EXHAUSTED = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; this tool reserves 2 for preconditions
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master RNG seed (default: entropy)")
    common.add_argument("--trials", type=_positive_int, default=1000, help="number of trials")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--qubit-cap", type=int, default=26,
                        help=f"per-context qubit cap (max {HARD_QUBIT_LIMIT})")

    parser = _Parser(prog="sharq", description="Quantum register simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    toss = sub.add_parser("coin-toss", parents=[common], help="toss a quantum coin")
    toss.add_argument("--tosses", type=int, choices=(1, 2), default=1)

    sub.add_parser("entangle", parents=[common], help="prepare and measure an EPR pair")

    factor = sub.add_parser("factor", parents=[common], help="factor an odd composite")
    factor.add_argument("n", type=int, help="the number to factor")
    factor.add_argument("--force-m", type=int, default=None,
                        help="pin the random base m (reproduces worked traces)")
    factor.add_argument("--oracle", choices=("semantic", "circuit"), default="semantic")

    state = sub.add_parser("state", parents=[common], help="prepare and measure a named state")
    state.add_argument("name", choices=NAMED_STATES)
    return parser


def _resolve_seed(seed) -> int:
    if seed is not None:
        return int(seed)
    return int(np.random.SeedSequence().generate_state(1)[0])


def _emit_tally(args, seed: int, tally: Counter, elapsed_ms: int):
    total = sum(tally.values())
    if args.output == "json":
        for outcome in sorted(tally):
            print(json.dumps({"outcome": outcome, "count": tally[outcome]}))
        print(json.dumps({"seed": seed, "trials": total, "elapsed_ms": elapsed_ms}))
    else:
        for outcome in sorted(tally):
            count = tally[outcome]
            print(f"{outcome}: {count} ({count / total:.4f})")
        print(f"seed={seed} trials={total} elapsed_ms={elapsed_ms}")


def _run_tally(args, per_trial) -> int:
    seed = _resolve_seed(args.seed)
    start = time.perf_counter()
    tally: Counter = Counter()
    for trial in range(args.trials):
        ctx = SimulationContext(seed=trial_seed(seed, trial), qubit_cap=args.qubit_cap)
        tally[per_trial(ctx)] += 1
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    _emit_tally(args, seed, tally, elapsed_ms)
    return EXIT_OK


def cmd_coin_toss(args) -> int:
    def per_trial(ctx):
        coin = ctx.allocate_register(1)
        for _ in range(args.tosses):
            coin.apply_operation(hadamard(0))
        return coin.measure().to_bitstring()

    return _run_tally(args, per_trial)


def cmd_entangle(args) -> int:
    def per_trial(ctx):
        return prepare_named_state(ctx, "beta00").measure().to_bitstring()

    return _run_tally(args, per_trial)


def cmd_state(args) -> int:
    def per_trial(ctx):
        return prepare_named_state(ctx, args.name).measure().to_bitstring()

    return _run_tally(args, per_trial)


def cmd_factor(args) -> int:
    seed = _resolve_seed(args.seed)
    ctx = SimulationContext(seed=seed, qubit_cap=args.qubit_cap)
    start = time.perf_counter()
    outcome = shor_factor(ctx, args.n, force_m=args.force_m, oracle=args.oracle)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    if args.output == "json":
        for record in outcome.trace:
            print(json.dumps({
                "iteration": record.iteration,
                "m": record.m,
                "status": record.status,
                "sample": None if record.sample is None else record.sample.measured,
                "period": record.period,
            }))
        print(json.dumps({
            "n": outcome.n_value,
            "factors": list(outcome.factors),
            "seed": seed,
            "elapsed_ms": elapsed_ms,
        }))
    else:
        for record in outcome.trace:
            detail = "" if record.period is None else f" period={record.period}"
            sample = "" if record.sample is None else f" sample={record.sample.measured}"
            print(f"iteration {record.iteration}: m={record.m} {record.status}{sample}{detail}")
        p, q = outcome.factors
        print(f"{outcome.n_value} = {p} x {q}")
        print(f"seed={seed} elapsed_ms={elapsed_ms}")
    return EXIT_OK


_COMMANDS = {
    "coin-toss": cmd_coin_toss,
    "entangle": cmd_entangle,
    "factor": cmd_factor,
    "state": cmd_state,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not 1 <= args.qubit_cap <= HARD_QUBIT_LIMIT:
        sys.stderr.write(f"sharq: error: --qubit-cap must be in [1, {HARD_QUBIT_LIMIT}]\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ResourceExhaustedError as exc:
        sys.stderr.write(f"sharq: {exc}\n")
        return EXIT_EXHAUSTED
    except (InvalidParameterError, QubitLimitExceededError) as exc:
        sys.stderr.write(f"sharq: {exc}\n")
        return EXIT_PRECONDITION
    except SharqError as exc:
        sys.stderr.write(f"sharq: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
