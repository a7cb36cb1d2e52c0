"""Seeded simulation of the induced walk and Monte Carlo estimators.

Reproducibility contract: the generator is PCG64, and trial i of an
estimator draws from the substream seeded by SeedSequence((seed, i))
(seed taken modulo 2**64). Identical (network, arguments, seed) therefore
give bit-identical estimates on every platform and under any trial-level
parallelism, as long as results are reduced in trial order — which the
sequential implementation here does trivially.

A trial that would run past the step cap aborts the whole estimate with
CapExceeded rather than truncating: silent truncation would bias the mean
downward invisibly.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from itertools import accumulate
from weakref import WeakKeyDictionary

import numpy as np

from .errors import CapExceeded
from .network import AugmentedNetwork, Network, VertexId

DEFAULT_STEP_CAP = 10**7

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class Estimate:
    """Monte Carlo point estimate with its provenance.

    std_error is the sample standard deviation over sqrt(trials) (zero
    for a single trial). capped_trials stays 0 on any accepted estimate;
    a capped trial raises instead of being counted.
    """

    mean: float
    std_error: float
    trials: int
    seed: int
    capped_trials: int = 0


@dataclass(frozen=True, eq=False)
class ExcursionEstimate(Estimate):
    """Excursion-count estimate plus the empirical distribution of counts."""

    counts: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class WalkTrace:
    """A recorded walk: X_0, X_1, ... and why it stopped."""

    start: VertexId
    steps: tuple[VertexId, ...]
    terminal_reason: str  # "hit-target" | "cap-reached"


_TABLE_CACHE: WeakKeyDictionary = WeakKeyDictionary()


def _tables(net: Network) -> dict:
    """Per-vertex cumulative-conductance tables for inverse-CDF sampling.

    Neighbour order is the network's stored order; conductances are
    positive so cumulative entries are strictly increasing and ties are
    impossible.
    """
    tables = _TABLE_CACHE.get(net)
    if tables is None:
        tables = {}
        for v in net.vertices:
            nbrs = tuple(z for z, _ in net.neighbors[v])
            cum = tuple(accumulate(c for _, c in net.neighbors[v]))
            tables[v] = (nbrs, cum, cum[-1])
        _TABLE_CACHE[net] = tables
    return tables


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """The pinned substream for one trial: PCG64 over SeedSequence((seed, trial))."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed & _MASK64, trial))))


def _draw(tables: dict, current: VertexId, rng: np.random.Generator) -> VertexId:
    nbrs, cum, total = tables[current]
    i = bisect_right(cum, rng.random() * total)
    if i == len(nbrs):  # guards the measure-zero rounding edge at the top end
        i -= 1
    return nbrs[i]


def step(net: Network, current: VertexId, rng: np.random.Generator) -> VertexId:
    """Advance one step: neighbour z is chosen with probability C_yz / C_y.

    Sampling is inverse-CDF over the stored neighbour order, consuming
    exactly one uniform draw, so the rng state advances deterministically.
    """
    net.require(current)
    return _draw(_tables(net), current, rng)


def trace_walk(
    net: Network,
    start: VertexId,
    target: VertexId,
    rng: np.random.Generator,
    step_cap: int = DEFAULT_STEP_CAP,
) -> WalkTrace:
    """Record a walk from start until it reaches target or hits the cap.

    Unlike the estimators, reaching the cap here is reported in the trace
    instead of raised, so callers can inspect partial paths.
    """
    net.require(start)
    net.require(target)
    tables = _tables(net)
    path = [start]
    current = start
    reason = "cap-reached"
    while len(path) - 1 < step_cap:
        current = _draw(tables, current, rng)
        path.append(current)
        if current == target:
            reason = "hit-target"
            break
    return WalkTrace(start=start, steps=tuple(path), terminal_reason=reason)


def _check_trial_args(trials: int, step_cap: int) -> None:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if step_cap < 1:
        raise ValueError(f"step_cap must be >= 1, got {step_cap}")


def _first_passage(tables: dict, start: VertexId, target: VertexId,
                   rng: np.random.Generator, cap: int) -> int:
    current = start
    steps = 0
    while steps < cap:
        current = _draw(tables, current, rng)
        steps += 1
        if current == target:
            return steps
    raise CapExceeded(f"walk from {start!r} exceeded the step cap of {cap}")


def _summarize(samples: list, trials: int) -> tuple[float, float]:
    data = np.asarray(samples, dtype=float)
    mean = float(data.mean())
    if trials > 1:
        se = float(data.std(ddof=1) / math.sqrt(trials))
    else:
        se = 0.0
    return mean, se


def estimate_return_time(
    net: Network,
    z: VertexId,
    trials: int,
    seed: int,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Estimate:
    """Estimate the expected first-return time to z over seeded trials."""
    net.require(z)
    _check_trial_args(trials, step_cap)
    tables = _tables(net)
    samples = [
        _first_passage(tables, z, z, trial_generator(seed, i), step_cap)
        for i in range(trials)
    ]
    mean, se = _summarize(samples, trials)
    return Estimate(mean=mean, std_error=se, trials=trials, seed=seed)


def estimate_hitting_time(
    net: Network,
    x: VertexId,
    y: VertexId,
    trials: int,
    seed: int,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Estimate:
    """Estimate the expected first-visit time from x to y (zero when x == y)."""
    net.require(x)
    net.require(y)
    _check_trial_args(trials, step_cap)
    if x == y:
        return Estimate(mean=0.0, std_error=0.0, trials=trials, seed=seed)
    tables = _tables(net)
    samples = [
        _first_passage(tables, x, y, trial_generator(seed, i), step_cap)
        for i in range(trials)
    ]
    mean, se = _summarize(samples, trials)
    return Estimate(mean=mean, std_error=se, trials=trials, seed=seed)


def estimate_excursions(
    aug: AugmentedNetwork,
    trials: int,
    seed: int,
    step_cap: int = DEFAULT_STEP_CAP,
) -> ExcursionEstimate:
    """Count completed excursions from the anchor before reaching the pendant.

    Each trial walks the combined network from the anchor until the first
    arrival at the pendant; its sample is the number of visits to the
    anchor minus one (the walk starts there), i.e. the excursions that
    returned. The mean converges to C_anchor / pendant_conductance, and
    the per-count empirical distribution is kept for goodness-of-fit
    checks against the geometric law.
    """
    _check_trial_args(trials, step_cap)
    tables = _tables(aug.combined)
    anchor, pendant = aug.anchor, aug.pendant
    samples = []
    for i in range(trials):
        rng = trial_generator(seed, i)
        current = anchor
        visits = 1
        steps = 0
        while True:
            if steps >= step_cap:
                raise CapExceeded(
                    f"walk from {anchor!r} exceeded the step cap of {step_cap}"
                )
            current = _draw(tables, current, rng)
            steps += 1
            if current == pendant:
                break
            if current == anchor:
                visits += 1
        samples.append(visits - 1)
    mean, se = _summarize(samples, trials)
    counts = Counter(samples)
    return ExcursionEstimate(
        mean=mean,
        std_error=se,
        trials=trials,
        seed=seed,
        counts={k: counts[k] for k in sorted(counts)},
    )
