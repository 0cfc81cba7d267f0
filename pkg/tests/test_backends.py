"""Compiled and pure kernels must produce bit-identical runs.

Also checks the loop kernels against an independent step-by-step driver
built only from the public orthopair API.
"""

from __future__ import annotations

import pytest

from kleenesim import backend
from kleenesim.backend import _pack, _sample_capacity, _unpack_into, available_kernels
from kleenesim.consensus import BOOLEAN_STOCHASTIC, THREE_VALUED, gate_and_combine
from kleenesim.engine import (
    INIT_BOOLEAN,
    INIT_THREE_VALUED,
    PAYOFF_PROPORTIONATE,
    UNIFORM_RANDOM,
    Population,
    RunConfig,
    init_boolean,
    init_three_valued,
    run,
    select_pair_payoff,
    select_pair_uniform,
)
from kleenesim.kleene import Valuation
from kleenesim.payoff import sample_profile
from kleenesim.rng import BitStream, stream_for_seed

HAS_COMPILED = "compiled" in available_kernels()
needs_compiled = pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel not built")


class TestKernelSelection:
    def test_pure_kernel_always_available(self):
        assert "pure" in available_kernels()

    def test_unknown_kernel_name_rejected(self):
        with pytest.raises(RuntimeError, match="invalid"):
            backend._resolve("bogus")

    @needs_compiled
    def test_explicit_names_resolve_to_themselves(self):
        assert backend._resolve("pure") == "pure"
        assert backend._resolve("compiled") == "compiled"
        assert backend._resolve("auto") == "compiled"


class TestPacking:
    @pytest.mark.parametrize("n", [1, 63, 64, 65, 128, 130])
    def test_mask_round_trip(self, n):
        limbs = (n + 63) // 64
        masks = [0, (1 << n) - 1, (1 << n) // 3, 1 << (n - 1)]
        arr = _pack(masks, limbs)
        out = [0] * len(masks)
        _unpack_into(arr, out)
        assert out == masks

    @pytest.mark.parametrize(
        "iterations,record_every,expected",
        [
            (0, 100, 1),       # initial sample only
            (100, 100, 2),     # 0 and 100
            (350, 100, 5),     # 0, 100, 200, 300, 350
            (300, 100, 4),     # final coincides with a record point
            (1, 100, 2),       # 0 and 1
            (99, 100, 2),
        ],
    )
    def test_sample_capacity_matches_grid(self, iterations, record_every, expected):
        assert _sample_capacity(iterations, record_every) == expected


@needs_compiled
class TestStreamIdentity:
    def test_compiled_raw_draws_match_wrapper(self):
        """Both kernels consume the identical PCG64 word sequence."""
        from kleenesim import _speedups

        a = BitStream(987654321)
        b = BitStream(987654321)
        expected = [a.u64() for _ in range(1000)]
        assert _speedups.raw_probe(b.bit_generator, 1000) == expected

    def test_interleaved_consumption_shares_one_stream(self):
        from kleenesim import _speedups

        ref = BitStream(42)
        mixed = BitStream(42)
        expected = [ref.u64() for _ in range(20)]
        got = []
        for i in range(10):
            got.append(mixed.u64())
            got.extend(_speedups.raw_probe(mixed.bit_generator, 1))
        assert got == expected


GRID = [
    # operator, selection, init, n, m, gamma
    (THREE_VALUED, UNIFORM_RANDOM, INIT_THREE_VALUED, 7, 9, 0.5),
    (THREE_VALUED, PAYOFF_PROPORTIONATE, INIT_THREE_VALUED, 5, 6, 0.3),
    (BOOLEAN_STOCHASTIC, UNIFORM_RANDOM, INIT_BOOLEAN, 5, 6, 0.7),
    (BOOLEAN_STOCHASTIC, PAYOFF_PROPORTIONATE, INIT_BOOLEAN, 64, 5, 0.8),
    (THREE_VALUED, UNIFORM_RANDOM, INIT_THREE_VALUED, 65, 5, 0.6),
    (THREE_VALUED, PAYOFF_PROPORTIONATE, INIT_THREE_VALUED, 100, 5, 1.0),
]


@needs_compiled
class TestCrossKernelEquality:
    @pytest.mark.parametrize("operator,selection,init,n,m,gamma", GRID)
    def test_bit_identical_runs(self, operator, selection, init, n, m, gamma):
        config = RunConfig(
            population_size=m, n=n, gamma=gamma, operator=operator,
            selection=selection, init=init, iterations=1500, seed=2718,
            record_every=50,
        )
        pure = run(config, kernel="pure")
        compiled = run(config, kernel="compiled")
        assert compiled.trajectory == pure.trajectory  # floats compared exactly
        assert compiled.final_population == pure.final_population
        assert compiled.profile == pure.profile

    def test_early_stop_identical(self):
        config = RunConfig(population_size=6, n=2, gamma=1.0, iterations=50_000,
                           seed=99, early_stop=True)
        pure = run(config, kernel="pure")
        compiled = run(config, kernel="compiled")
        assert compiled.trajectory == pure.trajectory
        assert compiled.final_population == pure.final_population


def reference_run(config: RunConfig) -> Population:
    """Re-drive a run step by step through the public API only."""
    stream = stream_for_seed(config.seed)
    profile = config.payoff_profile
    if profile is None:
        profile = sample_profile(config.n, stream)
    if config.init == INIT_THREE_VALUED:
        pop = init_three_valued(config.population_size, config.n, stream)
    else:
        pop = init_boolean(config.population_size, config.n, stream)
    agents = list(pop)
    for _ in range(config.iterations):
        current = Population(agents, config.n)
        if config.selection == UNIFORM_RANDOM:
            a, b = select_pair_uniform(current, stream)
        else:
            a, b = select_pair_payoff(current, profile, stream)
        combined = gate_and_combine(
            agents[a], agents[b], config.gamma, operator=config.operator, rng=stream
        )
        if combined is not None:
            agents[a] = agents[b] = combined
    return Population(agents, config.n)


class TestKernelAgainstPublicApi:
    """The optimized loop equals a naive composition of the public pieces."""

    @pytest.mark.parametrize(
        "operator,selection,init",
        [
            (THREE_VALUED, UNIFORM_RANDOM, INIT_THREE_VALUED),
            (THREE_VALUED, PAYOFF_PROPORTIONATE, INIT_THREE_VALUED),
            (BOOLEAN_STOCHASTIC, UNIFORM_RANDOM, INIT_BOOLEAN),
            (BOOLEAN_STOCHASTIC, PAYOFF_PROPORTIONATE, INIT_BOOLEAN),
        ],
    )
    @pytest.mark.parametrize("kernel", ["pure", "compiled"])
    def test_loop_matches_stepwise_driver(self, operator, selection, init, kernel):
        if kernel == "compiled" and not HAS_COMPILED:
            pytest.skip("compiled kernel not built")
        config = RunConfig(
            population_size=8, n=6, gamma=0.5, operator=operator,
            selection=selection, init=init, iterations=300, seed=1414,
        )
        metrics = run(config, kernel=kernel)
        assert metrics.final_population == reference_run(config)


@needs_compiled
class TestCompiledDrawParity:
    def test_stream_position_identical_after_run(self):
        """Both kernels leave the generator at the same position."""
        config = RunConfig(population_size=9, n=7, gamma=0.6,
                           selection=PAYOFF_PROPORTIONATE, iterations=777, seed=31)
        s_pure = stream_for_seed(config.seed)
        s_comp = stream_for_seed(config.seed)
        for stream, kernel in ((s_pure, "pure"), (s_comp, "compiled")):
            profile = sample_profile(config.n, stream)
            pop = init_three_valued(config.population_size, config.n, stream)
            pos = [v.pos_bits for v in pop]
            neg = [v.neg_bits for v in pop]
            backend.run_loop(stream, pos, neg, profile.values, config.n,
                             config.gamma, config.operator, config.selection,
                             config.iterations, config.record_every, False,
                             kernel=kernel)
        assert s_pure.bit_generator.random_raw() == s_comp.bit_generator.random_raw()
