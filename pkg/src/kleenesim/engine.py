"""Agent population, initialisation schemes, pair selection and the run loop.

A run is fully determined by its RunConfig: a single random stream is
derived from the seed and consumed in a fixed order -- payoff profile
first (unless an explicit profile is configured), then initial beliefs
(agent-major, variable-ascending), then the iteration loop (selection
draws, then one coin per conflicting variable for the Boolean
operator).  The loop itself runs on the backend kernel selected at
import time; both kernels produce bit-identical metrics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import backend
from ._pyloop import pick_uniform_pair, pick_weighted_pair
from .consensus import BOOLEAN_STOCHASTIC, OPERATORS, THREE_VALUED
from .errors import ConfigError
from .kleene import Valuation
from .payoff import PayoffProfile, sample_profile, selection_weight
from .rng import BitStream, stream_for_seed

logger = logging.getLogger(__name__)

UNIFORM_RANDOM = "uniform-random"
PAYOFF_PROPORTIONATE = "payoff-proportionate"
SELECTIONS = (UNIFORM_RANDOM, PAYOFF_PROPORTIONATE)

INIT_THREE_VALUED = "three-valued-random"
INIT_BOOLEAN = "boolean-random"
INITS = (INIT_THREE_VALUED, INIT_BOOLEAN)

MAX_SEED = 2**64 - 1


class Population:
    """Fixed-size ordered collection of agent valuations sharing one n."""

    __slots__ = ("agents", "n")

    def __init__(self, agents: Sequence[Valuation], n: int | None = None):
        agents = tuple(agents)
        if not agents:
            raise ValueError("population must contain at least one agent")
        if n is None:
            n = agents[0].n
        for i, v in enumerate(agents):
            if v.n != n:
                raise ValueError(f"agent {i} has n={v.n}, expected {n}")
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Population is immutable")

    def __len__(self) -> int:
        return len(self.agents)

    def __iter__(self):
        return iter(self.agents)

    def __getitem__(self, i: int) -> Valuation:
        return self.agents[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Population):
            return NotImplemented
        return self.n == other.n and self.agents == other.agents

    def __reduce__(self):
        return (Population, (self.agents, self.n))


@dataclass(frozen=True)
class TrajectoryPoint:
    iteration: int
    distinct: int
    vagueness: float
    payoff_pct: float


@dataclass(frozen=True)
class RunConfig:
    population_size: int
    n: int
    gamma: float
    operator: str = THREE_VALUED
    selection: str = UNIFORM_RANDOM
    init: str = INIT_THREE_VALUED
    iterations: int = 50_000
    seed: int = 0
    payoff_profile: PayoffProfile | None = None
    record_every: int = 100
    early_stop: bool = False

    def validate(self) -> None:
        if self.population_size < 1:
            raise ConfigError(f"population_size must be >= 1, got {self.population_size}")
        if self.iterations > 0 and self.population_size < 2:
            raise ConfigError("pair selection needs a population of at least 2")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError(f"gamma must be in [0, 1], got {self.gamma}")
        if self.operator not in OPERATORS:
            raise ConfigError(f"unknown operator {self.operator!r} (expected one of {OPERATORS})")
        if self.selection not in SELECTIONS:
            raise ConfigError(
                f"unknown selection {self.selection!r} (expected one of {SELECTIONS})"
            )
        if self.init not in INITS:
            raise ConfigError(f"unknown init {self.init!r} (expected one of {INITS})")
        if self.operator == BOOLEAN_STOCHASTIC and self.init != INIT_BOOLEAN:
            raise ConfigError("boolean-stochastic operator requires boolean-random init")
        if self.iterations < 0:
            raise ConfigError(f"iterations must be >= 0, got {self.iterations}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.record_every < 1:
            raise ConfigError(f"record_every must be >= 1, got {self.record_every}")
        if self.payoff_profile is not None and len(self.payoff_profile) != self.n:
            raise ConfigError(
                f"payoff profile length {len(self.payoff_profile)} != n={self.n}"
            )


@dataclass(frozen=True)
class RunMetrics:
    trajectory: tuple[TrajectoryPoint, ...]
    endpoint: TrajectoryPoint
    final_population: Population
    profile: PayoffProfile
    warnings: tuple[str, ...] = field(default=())


def init_three_valued(m: int, n: int, rng: BitStream) -> Population:
    """Each agent and variable drawn true/borderline/false with probability 1/3."""
    agents = []
    for _ in range(m):
        pos = neg = 0
        for j in range(n):
            r = rng.below(3)  # 0 false, 1 borderline, 2 true
            if r == 0:
                neg |= 1 << j
            elif r == 2:
                pos |= 1 << j
        agents.append(Valuation.from_bits(n, pos, neg))
    return Population(agents, n)


def init_boolean(m: int, n: int, rng: BitStream) -> Population:
    """Each agent and variable drawn true/false with probability 1/2."""
    agents = []
    for _ in range(m):
        pos = 0
        for j in range(n):
            if rng.coin():
                pos |= 1 << j
        agents.append(Valuation.from_bits(n, pos, ((1 << n) - 1) & ~pos))
    return Population(agents, n)


def select_pair_uniform(pop: Population, rng: BitStream) -> tuple[int, int]:
    """Two distinct agent indices, uniform over unordered pairs."""
    if len(pop) < 2:
        raise ConfigError("pair selection needs a population of at least 2")
    return pick_uniform_pair(len(pop), rng)


def select_pair_payoff(
    pop: Population, profile: PayoffProfile, rng: BitStream
) -> tuple[int, int]:
    """Two distinct agent indices, weighted by payoff + n without replacement."""
    if len(pop) < 2:
        raise ConfigError("pair selection needs a population of at least 2")
    weights = []
    for v in pop:
        w = selection_weight(v, profile)
        weights.append(w if w > 0.0 else 0.0)
    return pick_weighted_pair(weights, rng)


def distinct_valuations(pop: Population) -> int:
    """Number of unique orthopairs among the agents."""
    return len(set(pop.agents))


def mean_vagueness(pop: Population) -> float:
    """Borderline fraction averaged over the population."""
    borderline_total = 0
    for v in pop:
        borderline_total += v.n - (v.pos_bits | v.neg_bits).bit_count()
    return borderline_total / (len(pop) * pop.n)


def run(config: RunConfig, kernel: str | None = None) -> RunMetrics:
    """Execute one run; deterministic in config.seed.

    ``kernel`` optionally forces "pure" or "compiled" (testing and
    benchmarking aid); by default the backend chosen at import is used.
    """
    config.validate()
    stream = stream_for_seed(config.seed)

    if config.payoff_profile is not None:
        profile = config.payoff_profile
    else:
        profile = sample_profile(config.n, stream)

    m, n = config.population_size, config.n
    if config.init == INIT_THREE_VALUED:
        pop = init_three_valued(m, n, stream)
    else:
        pop = init_boolean(m, n, stream)

    pos = [v.pos_bits for v in pop]
    neg = [v.neg_bits for v in pop]
    samples = backend.run_loop(
        stream,
        pos,
        neg,
        profile.values,
        n,
        config.gamma,
        config.operator,
        config.selection,
        config.iterations,
        config.record_every,
        config.early_stop,
        kernel=kernel,
    )

    warnings: tuple[str, ...] = ()
    if all(x == 0.0 for x in profile.values):
        warnings = ("max payoff is 0; payoff percentage reported as 0",)
        logger.warning("max payoff is 0; payoff percentage reported as 0")

    trajectory = tuple(TrajectoryPoint(*s) for s in samples)
    final = Population([Valuation.from_bits(n, pos[i], neg[i]) for i in range(m)], n)
    return RunMetrics(
        trajectory=trajectory,
        endpoint=trajectory[-1],
        final_population=final,
        profile=profile,
        warnings=warnings,
    )
