"""Shared fixtures and hypothesis strategies for the test suite."""

from __future__ import annotations

import hypothesis.strategies as st

from kleenesim.kleene import Valuation
from kleenesim.rng import BitStream

# per-variable states: 0 false, 1 borderline, 2 true
_STATES = st.integers(min_value=0, max_value=2)


def valuation_from_states(states: list[int]) -> Valuation:
    pos = neg = 0
    for i, s in enumerate(states):
        if s == 2:
            pos |= 1 << i
        elif s == 0:
            neg |= 1 << i
    return Valuation.from_bits(len(states), pos, neg)


@st.composite
def valuations(draw, min_n: int = 1, max_n: int = 12) -> Valuation:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return valuation_from_states(draw(st.lists(_STATES, min_size=n, max_size=n)))


@st.composite
def valuation_pairs(draw, min_n: int = 1, max_n: int = 12) -> tuple[Valuation, Valuation]:
    """Two valuations sharing the same variable count."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    a = valuation_from_states(draw(st.lists(_STATES, min_size=n, max_size=n)))
    b = valuation_from_states(draw(st.lists(_STATES, min_size=n, max_size=n)))
    return a, b


# the 7 per-variable state pairs with no direct conflict (true/false or false/true)
_CONSISTENT_PAIRS = [(a, b) for a in range(3) for b in range(3) if {a, b} != {0, 2}]


@st.composite
def consistent_pairs(draw, min_n: int = 1, max_n: int = 12) -> tuple[Valuation, Valuation]:
    """Two same-n valuations with zero inconsistency, built constructively."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    cells = draw(st.lists(st.sampled_from(_CONSISTENT_PAIRS), min_size=n, max_size=n))
    return (
        valuation_from_states([a for a, _ in cells]),
        valuation_from_states([b for _, b in cells]),
    )


def fresh_stream(seed: int = 12345) -> BitStream:
    return BitStream(seed)
