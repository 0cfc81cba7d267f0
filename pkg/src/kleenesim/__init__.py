"""Seeded multi-agent consensus simulator over Kleene three-valued logic.

Agents hold beliefs as orthopair valuations (disjoint true / false
variable sets, the rest borderline).  Randomly or payoff-proportionately
selected pairs combine beliefs through a consensus operator whenever
their inconsistency stays under a threshold gamma.  The package ships a
compiled kernel with a pure-Python fallback, an experiment CLI for
seeded parameter sweeps, and CSV/JSON outputs for plotting.
"""

from .backend import DEFAULT_KERNEL, available_kernels
from .consensus import (
    BOOLEAN_STOCHASTIC,
    OPERATORS,
    THREE_VALUED,
    InconsistencyThreshold,
    boolean_stochastic_consensus,
    consensus,
    gate_and_combine,
    inconsistency,
    vagueness,
)
from .engine import (
    INIT_BOOLEAN,
    INIT_THREE_VALUED,
    INITS,
    PAYOFF_PROPORTIONATE,
    SELECTIONS,
    UNIFORM_RANDOM,
    Population,
    RunConfig,
    RunMetrics,
    TrajectoryPoint,
    distinct_valuations,
    init_boolean,
    init_three_valued,
    mean_vagueness,
    run,
    select_pair_payoff,
    select_pair_uniform,
)
from .errors import ConfigError, ContractViolation, DimensionMismatch
from .kleene import (
    And,
    Not,
    Or,
    Sentence,
    TruthValue,
    Valuation,
    Var,
    conj,
    disj,
    evaluate,
    neg,
    variables,
)
from .payoff import (
    PayoffProfile,
    max_payoff,
    sample_profile,
    selection_weight,
    valuation_payoff,
)
from .rng import BitStream, run_seed, stream_for_seed
from .sweep import AggregateRecord, SweepConfig, run_sweep, variant_label
from ._version import __version__

__all__ = [
    "AggregateRecord",
    "And",
    "BitStream",
    "BOOLEAN_STOCHASTIC",
    "ConfigError",
    "ContractViolation",
    "DEFAULT_KERNEL",
    "DimensionMismatch",
    "INIT_BOOLEAN",
    "INIT_THREE_VALUED",
    "INITS",
    "InconsistencyThreshold",
    "Not",
    "OPERATORS",
    "Or",
    "PAYOFF_PROPORTIONATE",
    "PayoffProfile",
    "Population",
    "RunConfig",
    "RunMetrics",
    "SELECTIONS",
    "Sentence",
    "SweepConfig",
    "THREE_VALUED",
    "TrajectoryPoint",
    "TruthValue",
    "UNIFORM_RANDOM",
    "Valuation",
    "Var",
    "available_kernels",
    "boolean_stochastic_consensus",
    "conj",
    "consensus",
    "disj",
    "distinct_valuations",
    "evaluate",
    "gate_and_combine",
    "inconsistency",
    "init_boolean",
    "init_three_valued",
    "max_payoff",
    "mean_vagueness",
    "neg",
    "run",
    "run_seed",
    "run_sweep",
    "sample_profile",
    "select_pair_payoff",
    "select_pair_uniform",
    "selection_weight",
    "stream_for_seed",
    "vagueness",
    "valuation_payoff",
    "variables",
    "variant_label",
    "__version__",
]
