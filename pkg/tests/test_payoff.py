"""Payoff profiles, valuation scoring, maximal payoff and selection weights.

max_payoff is checked against exhaustive enumeration of every orthopair
(3^n of them) for several n; scoring laws (linearity, sign flips,
bounds) are property-tested.
"""

from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleenesim.consensus import consensus
from kleenesim.errors import DimensionMismatch
from kleenesim.kleene import Valuation
from kleenesim.payoff import (
    PayoffProfile,
    max_payoff,
    sample_profile,
    selection_weight,
    valuation_payoff,
)
from tests.conftest import fresh_stream, valuation_from_states

profiles = st.lists(
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=1, max_size=10
).map(PayoffProfile)


@st.composite
def profile_with_valuation(draw):
    profile = draw(profiles)
    states = draw(
        st.lists(st.integers(0, 2), min_size=len(profile), max_size=len(profile))
    )
    return profile, valuation_from_states(states)


def enumerate_orthopairs(n: int):
    for states in itertools.product((0, 1, 2), repeat=n):
        yield valuation_from_states(list(states))


class TestPayoffProfile:
    def test_values_frozen_and_validated(self):
        p = PayoffProfile([0.5, -0.2])
        assert p.values == (0.5, -0.2)
        assert len(p) == 2 and p[1] == -0.2
        with pytest.raises(AttributeError):
            p.values = (0.0,)

    def test_out_of_range_rejected(self):
        for bad in (1.5, -1.0001):
            with pytest.raises(ValueError, match="outside"):
                PayoffProfile([0.0, bad])

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            PayoffProfile([])

    def test_file_round_trip(self, tmp_path):
        p = PayoffProfile([0.5, -0.2, 0.0, 1.0, -1.0])
        path = tmp_path / "profile.txt"
        p.to_file(path)
        assert PayoffProfile.from_file(path) == p

    def test_file_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "profile.txt"
        path.write_text("0.25\n\n-0.75\n")
        assert PayoffProfile.from_file(path) == PayoffProfile([0.25, -0.75])

    def test_file_bad_number_names_line(self, tmp_path):
        path = tmp_path / "profile.txt"
        path.write_text("0.5\nbogus\n")
        with pytest.raises(ValueError, match=":2:"):
            PayoffProfile.from_file(path)

    def test_file_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "profile.txt"
        path.write_text("1.5\n")
        with pytest.raises(ValueError, match="outside"):
            PayoffProfile.from_file(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "profile.txt"
        path.write_text("\n")
        with pytest.raises(ValueError, match="no payoff values"):
            PayoffProfile.from_file(path)


class TestValuationPayoff:
    def test_all_borderline_scores_zero(self):
        p = PayoffProfile([0.9, -0.3, 0.1])
        assert valuation_payoff(Valuation.all_borderline(3), p) == 0.0

    def test_worked_example(self):
        p = PayoffProfile([0.5, -0.2])
        v = Valuation(2, positives={0}, negatives={1})
        assert valuation_payoff(v, p) == pytest.approx(0.7)

    def test_optimal_orthopair_attains_max(self):
        p = PayoffProfile([0.5, -0.2, 0.0, 0.8])
        best = Valuation(4, positives={0, 3}, negatives={1})
        assert valuation_payoff(best, p) == pytest.approx(max_payoff(p))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            valuation_payoff(Valuation(3), PayoffProfile([0.1, 0.2]))

    @given(profile_with_valuation())
    def test_bounded_by_max_payoff(self, pv):
        profile, v = pv
        score = valuation_payoff(v, profile)
        cap = max_payoff(profile)
        assert -cap - 1e-12 <= score <= cap + 1e-12

    @given(
        st.lists(st.integers(-16, 16), min_size=1, max_size=10),
        st.data(),
    )
    def test_halving_profile_halves_score_exactly(self, sixteenths, data):
        # dyadic entries keep power-of-two scaling exact in float arithmetic
        profile = PayoffProfile([k / 16.0 for k in sixteenths])
        states = data.draw(
            st.lists(st.integers(0, 2), min_size=len(profile), max_size=len(profile))
        )
        v = valuation_from_states(states)
        half = PayoffProfile([x / 2.0 for x in profile.values])
        assert valuation_payoff(v, half) == 0.5 * valuation_payoff(v, profile)

    def test_doubling_profile_doubles_score_exactly(self):
        profile = PayoffProfile([0.25, -0.125, 0.5])
        doubled = PayoffProfile([2.0 * x for x in profile.values])
        for v in enumerate_orthopairs(3):
            assert valuation_payoff(v, doubled) == 2.0 * valuation_payoff(v, profile)

    @given(profile_with_valuation())
    def test_flipping_a_variable_negates_its_contribution(self, pv):
        profile, v = pv
        for i in sorted(v.positives):
            flipped = Valuation(v.n, v.positives - {i}, v.negatives | {i})
            delta = valuation_payoff(flipped, profile) - valuation_payoff(v, profile)
            assert math.isclose(delta, -2.0 * profile[i], abs_tol=1e-12)

    @given(profile_with_valuation())
    def test_self_consensus_preserves_payoff(self, pv):
        profile, v = pv
        assert valuation_payoff(consensus(v, v), profile) == valuation_payoff(v, profile)


class TestMaxPayoff:
    def test_trivial_and_worked_cases(self):
        assert max_payoff(PayoffProfile([0.0, 0.0, 0.0])) == 0.0
        assert max_payoff(PayoffProfile([0.5, -0.2])) == pytest.approx(0.7)

    @pytest.mark.parametrize("n", [1, 3, 5, 8])
    def test_exhaustive_enumeration_oracle(self, n):
        """Brute force over all 3^n orthopairs never beats max_payoff."""
        rng = fresh_stream(n)
        profile = sample_profile(n, rng)
        best = max(valuation_payoff(v, profile) for v in enumerate_orthopairs(n))
        assert best == pytest.approx(max_payoff(profile), abs=1e-12)


class TestSelectionWeight:
    def test_all_borderline_weight_is_n(self):
        p = PayoffProfile([0.3, -0.9, 0.2, 0.0, 1.0])
        assert selection_weight(Valuation.all_borderline(5), p) == 5.0

    def test_worst_case_weight_is_zero(self):
        p = PayoffProfile([1.0, 1.0])
        v = Valuation(2, negatives={0, 1})
        assert selection_weight(v, p) == 0.0

    def test_optimal_and_pessimal_weights(self):
        p = PayoffProfile([0.5, -0.2])
        best = Valuation(2, positives={0}, negatives={1})
        worst = Valuation(2, positives={1}, negatives={0})
        assert selection_weight(best, p) == pytest.approx(2.7)
        assert selection_weight(worst, p) == pytest.approx(1.3)

    @given(profile_with_valuation())
    def test_weight_in_zero_to_two_n(self, pv):
        profile, v = pv
        w = selection_weight(v, profile)
        assert -1e-12 <= w <= 2 * v.n + 1e-12


class TestSampleProfile:
    def test_entries_in_range_large_sample(self):
        profile = sample_profile(1_000_000, fresh_stream(2024))
        assert all(-1.0 <= x < 1.0 for x in profile.values)
        mean = sum(profile.values) / len(profile)
        assert -0.01 <= mean <= 0.01

    def test_deterministic_under_same_seed(self):
        a = sample_profile(100, fresh_stream(7))
        b = sample_profile(100, fresh_stream(7))
        assert a == b

    def test_different_seeds_differ(self):
        assert sample_profile(100, fresh_stream(7)) != sample_profile(100, fresh_stream(8))

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            sample_profile(0, fresh_stream())
