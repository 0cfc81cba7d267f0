"""Pairwise belief combination and the measures that gate it.

The three-valued consensus of orthopairs (P1, N1) and (P2, N2) is

    ((P1 - N2) | (P2 - N1),  (N1 - P2) | (N2 - P1))

which keeps every agreed value, lets a definite value override a
borderline one, and maps direct conflict (one true, one false) to
borderline.  The Boolean baseline operator instead resolves each
conflicting variable with an independent fair coin.

Two valuations may combine only when their inconsistency -- the
fraction of variables in direct conflict -- does not exceed the
threshold gamma; the comparison is inclusive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation, DimensionMismatch
from .kleene import Valuation
from .rng import BitStream

THREE_VALUED = "three-valued"
BOOLEAN_STOCHASTIC = "boolean-stochastic"
OPERATORS = (THREE_VALUED, BOOLEAN_STOCHASTIC)


@dataclass(frozen=True)
class InconsistencyThreshold:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")


def _same_n(v1: Valuation, v2: Valuation) -> int:
    if v1.n != v2.n:
        raise DimensionMismatch(f"valuations differ in variable count: {v1.n} != {v2.n}")
    return v1.n


def consensus(v1: Valuation, v2: Valuation) -> Valuation:
    """Three-valued consensus of two valuations."""
    n = _same_n(v1, v2)
    pos = (v1.pos_bits & ~v2.neg_bits) | (v2.pos_bits & ~v1.neg_bits)
    neg = (v1.neg_bits & ~v2.pos_bits) | (v2.neg_bits & ~v1.pos_bits)
    return Valuation.from_bits(n, pos, neg)


def boolean_stochastic_consensus(v1: Valuation, v2: Valuation, rng: BitStream) -> Valuation:
    """Boolean baseline: keep agreements, coin-flip each conflict.

    Both inputs must be fully Boolean (no borderline variables).  One
    coin is drawn per conflicting variable in ascending index order, so
    replay under a fixed seed is exact.  Agreeing variables consume no
    randomness.
    """
    n = _same_n(v1, v2)
    if not v1.is_boolean() or not v2.is_boolean():
        raise ContractViolation("boolean-stochastic operator requires Boolean valuations")
    pos = v1.pos_bits & v2.pos_bits
    neg = v1.neg_bits & v2.neg_bits
    conflict = (v1.pos_bits & v2.neg_bits) | (v2.pos_bits & v1.neg_bits)
    for i in range(n):
        bit = 1 << i
        if conflict & bit:
            if rng.coin():
                pos |= bit
            else:
                neg |= bit
    return Valuation.from_bits(n, pos, neg)


def vagueness(v: Valuation) -> float:
    """Fraction of variables classified borderline, in [0, 1]."""
    definite = (v.pos_bits | v.neg_bits).bit_count()
    return (v.n - definite) / v.n


def inconsistency(v1: Valuation, v2: Valuation) -> float:
    """Fraction of variables in direct conflict, in [0, 1]; symmetric."""
    n = _same_n(v1, v2)
    conflicts = (v1.pos_bits & v2.neg_bits).bit_count() + (v2.pos_bits & v1.neg_bits).bit_count()
    return conflicts / n


def gate_and_combine(
    v1: Valuation,
    v2: Valuation,
    gamma: float | InconsistencyThreshold,
    operator: str = THREE_VALUED,
    rng: BitStream | None = None,
) -> Valuation | None:
    """Combine the pair if sufficiently consistent, else return None.

    The returned valuation is meant to replace *both* inputs.  The gate
    is inclusive: combination happens exactly when
    inconsistency(v1, v2) <= gamma.
    """
    if not isinstance(gamma, InconsistencyThreshold):
        gamma = InconsistencyThreshold(float(gamma))
    if inconsistency(v1, v2) > gamma.gamma:
        return None
    if operator == THREE_VALUED:
        return consensus(v1, v2)
    if operator == BOOLEAN_STOCHASTIC:
        if rng is None:
            raise ValueError("boolean-stochastic operator needs an rng")
        return boolean_stochastic_consensus(v1, v2, rng)
    raise ValueError(f"unknown operator {operator!r} (expected one of {OPERATORS})")
