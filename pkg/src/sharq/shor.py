"""Classical control loop for factoring via quantum period finding.

The loop: pick an untried random m in (1, N); a nontrivial gcd(m, N) is a
lucky factor; otherwise run the quantum step, extract the period P, reject
odd P and m**(P/2) == -1 (mod N), and emit gcd(m**(P/2) +- 1, N).
"""
from __future__ import annotations

from dataclasses import dataclass

from .engine import SimulationContext
from .errors import InvalidParameterError, ResourceExhaustedError
from .numtheory import (  # noqa: F401  (re-exported driver utilities)
    bits_to_express,
    gcd,
    is_prime,
    is_prime_power,
    mod_pow,
)

MAX_ITERATIONS = 32
SMALLEST_SUPPORTED = 15


@dataclass(frozen=True)
class IterationRecord:
    """One pass through the factoring loop."""

    iteration: int
    m: int
    status: str  # gcd-shortcut | degenerate-sample | odd-period | trivial-root | no-factor | factored
    sample: "PeriodSample | None" = None
    period: int | None = None


@dataclass(frozen=True)
class FactoringOutcome:
    n_value: int
    factors: tuple[int, int]
    trace: tuple[IterationRecord, ...]


def _screen(n_value: int):
    if n_value % 2 == 0:
        raise InvalidParameterError(f"N must be odd, got the even number {n_value}")
    if n_value < SMALLEST_SUPPORTED:
        raise InvalidParameterError(f"N must be at least {SMALLEST_SUPPORTED}, got {n_value}")
    if is_prime(n_value):
        raise InvalidParameterError(f"N must be composite, got the prime {n_value}")
    if is_prime_power(n_value):
        raise InvalidParameterError(
            f"N must not be a prime power, got {n_value} (use classical root extraction)"
        )


def shor_factor(ctx: SimulationContext, n_value: int, force_m: int | None = None,
                oracle: str = "semantic",
                max_iterations: int = MAX_ITERATIONS) -> FactoringOutcome:
    """Factor an odd composite N into (p, q) with p*q == N.

    ``force_m`` pins the random base; it exists to reproduce worked traces
    deterministically. ``oracle`` selects the semantic U_f (default) or the
    gate-built circuit where widths permit.
    """
    from .algorithms import extract_period, shor_quantum_step

    _screen(n_value)
    if force_m is not None and not 1 < force_m < n_value:
        raise InvalidParameterError(f"forced m must satisfy 1 < m < N, got {force_m}")

    n_bits = bits_to_express(n_value)
    work = None
    tried: set[int] = set()
    trace: list[IterationRecord] = []

    def finish(m, status, sample=None, period=None, factor=None):
        trace.append(IterationRecord(len(trace) + 1, m, status, sample, period))
        p, q = sorted((factor, n_value // factor))
        return FactoringOutcome(n_value, (p, q), tuple(trace))

    for _ in range(max_iterations):
        if force_m is not None:
            m = force_m
        else:
            untried = [c for c in range(2, n_value) if c not in tried]
            if not untried:
                raise ResourceExhaustedError(
                    f"every candidate m for N={n_value} has been tried without success"
                )
            m = int(ctx.rng.choice(untried))
            tried.add(m)

        lucky = gcd(m, n_value)
        if lucky != 1:
            return finish(m, "gcd-shortcut", factor=lucky)

        if work is None and oracle == "semantic":
            work = ctx.allocate_register(3 * n_bits)
        sample = shor_quantum_step(ctx, n_value, m, oracle=oracle, register=work)
        period = extract_period([sample], m, n_value)
        if period is None:
            trace.append(IterationRecord(len(trace) + 1, m, "degenerate-sample", sample))
            continue
        if period % 2:
            trace.append(IterationRecord(len(trace) + 1, m, "odd-period", sample, period))
            continue
        root = mod_pow(m, period // 2, n_value)
        if (root + 1) % n_value == 0:
            trace.append(IterationRecord(len(trace) + 1, m, "trivial-root", sample, period))
            continue
        for candidate in (gcd(root - 1, n_value), gcd(root + 1, n_value)):
            if 1 < candidate < n_value:
                return finish(m, "factored", sample, period, candidate)
        # root == 1 (mod N): the extracted period was a multiple of the order
        trace.append(IterationRecord(len(trace) + 1, m, "no-factor", sample, period))

    raise ResourceExhaustedError(
        f"no factor of {n_value} found within {max_iterations} iterations"
    )
