"""Kleene three-valued truth algebra, orthopair valuations and sentences.

Truth values are ordered FALSE < BORDERLINE < TRUE with numeric
interpretation 0, 1/2, 1.  Negation is ``1 - t``, conjunction is min,
disjunction is max.

A valuation over n propositional variables is stored as an orthopair of
bit sets: bit i of ``pos_bits`` set means variable i is true, bit i of
``neg_bits`` means false, neither means borderline.  The two sets are
disjoint by construction and valuations compare equal exactly when
their (n, P, N) triples do.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable

_SYMBOLS = "0?1"


class TruthValue(IntEnum):
    FALSE = 0
    BORDERLINE = 1
    TRUE = 2

    @property
    def numeric(self) -> float:
        """0.0, 0.5 or 1.0."""
        return self.value / 2.0

    @property
    def symbol(self) -> str:
        """Single-character form used in valuation text: '0', '?' or '1'."""
        return _SYMBOLS[self.value]

    @classmethod
    def from_symbol(cls, ch: str) -> "TruthValue":
        try:
            return cls(_SYMBOLS.index(ch))
        except ValueError:
            raise ValueError(f"not a truth symbol: {ch!r} (expected '0', '?' or '1')") from None


def neg(t: TruthValue) -> TruthValue:
    return TruthValue(2 - t)


def conj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(min(a, b))


def disj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(max(a, b))


def _mask_from_indices(n: int, indices: Iterable[int], what: str) -> int:
    mask = 0
    for i in indices:
        if not 0 <= i < n:
            raise ValueError(f"{what} index {i} out of range for n={n}")
        mask |= 1 << i
    return mask


class Valuation:
    """Immutable orthopair valuation over variables 0..n-1."""

    __slots__ = ("n", "pos_bits", "neg_bits")

    def __init__(self, n: int, positives: Iterable[int] = (), negatives: Iterable[int] = ()):
        if n < 1:
            raise ValueError(f"variable count must be >= 1, got {n}")
        pos = _mask_from_indices(n, positives, "positive")
        neg_ = _mask_from_indices(n, negatives, "negative")
        if pos & neg_:
            overlap = _bits_to_set(pos & neg_)
            raise ValueError(f"P and N must be disjoint; both contain {sorted(overlap)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "pos_bits", pos)
        object.__setattr__(self, "neg_bits", neg_)

    @classmethod
    def from_bits(cls, n: int, pos_bits: int, neg_bits: int) -> "Valuation":
        """Construct from ready-made bit masks (used by the simulation kernels)."""
        if n < 1:
            raise ValueError(f"variable count must be >= 1, got {n}")
        full = (1 << n) - 1
        if pos_bits & ~full or neg_bits & ~full:
            raise ValueError(f"bit set exceeds n={n} variables")
        if pos_bits & neg_bits:
            raise ValueError("P and N must be disjoint")
        v = cls.__new__(cls)
        object.__setattr__(v, "n", n)
        object.__setattr__(v, "pos_bits", pos_bits)
        object.__setattr__(v, "neg_bits", neg_bits)
        return v

    @classmethod
    def from_text(cls, text: str) -> "Valuation":
        """Parse the n-character '0?1' form, position i giving variable i."""
        if not text:
            raise ValueError("empty valuation text")
        pos = neg_ = 0
        for i, ch in enumerate(text):
            t = TruthValue.from_symbol(ch)
            if t is TruthValue.TRUE:
                pos |= 1 << i
            elif t is TruthValue.FALSE:
                neg_ |= 1 << i
        return cls.from_bits(len(text), pos, neg_)

    @classmethod
    def all_borderline(cls, n: int) -> "Valuation":
        return cls.from_bits(n, 0, 0)

    def __setattr__(self, name, value):
        raise AttributeError("Valuation is immutable")

    def truth_of(self, i: int) -> TruthValue:
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        if (self.pos_bits >> i) & 1:
            return TruthValue.TRUE
        if (self.neg_bits >> i) & 1:
            return TruthValue.FALSE
        return TruthValue.BORDERLINE

    @property
    def positives(self) -> frozenset[int]:
        return _bits_to_set(self.pos_bits)

    @property
    def negatives(self) -> frozenset[int]:
        return _bits_to_set(self.neg_bits)

    @property
    def borderlines(self) -> frozenset[int]:
        return _bits_to_set(((1 << self.n) - 1) & ~(self.pos_bits | self.neg_bits))

    def is_boolean(self) -> bool:
        """True when no variable is borderline."""
        return (self.pos_bits | self.neg_bits) == (1 << self.n) - 1

    def to_text(self) -> str:
        return "".join(self.truth_of(i).symbol for i in range(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return (
            self.n == other.n
            and self.pos_bits == other.pos_bits
            and self.neg_bits == other.neg_bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.pos_bits, self.neg_bits))

    def __repr__(self) -> str:
        return f"Valuation.from_text({self.to_text()!r})"

    def __reduce__(self):
        return (Valuation.from_bits, (self.n, self.pos_bits, self.neg_bits))


def _bits_to_set(mask: int) -> frozenset[int]:
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return frozenset(out)


# -- sentences ---------------------------------------------------------------


class Sentence:
    """Expression tree over propositional variables; see Var/Not/And/Or."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Sentence):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be >= 0, got {self.index}")


@dataclass(frozen=True)
class Not(Sentence):
    child: Sentence


@dataclass(frozen=True)
class And(Sentence):
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Or(Sentence):
    left: Sentence
    right: Sentence


def evaluate(sentence: Sentence, valuation: Valuation) -> TruthValue:
    """Evaluate a sentence under a valuation by structural recursion.

    An out-of-range variable index is a programming error and raises
    IndexError.
    """
    if isinstance(sentence, Var):
        return valuation.truth_of(sentence.index)
    if isinstance(sentence, Not):
        return neg(evaluate(sentence.child, valuation))
    if isinstance(sentence, And):
        return conj(evaluate(sentence.left, valuation), evaluate(sentence.right, valuation))
    if isinstance(sentence, Or):
        return disj(evaluate(sentence.left, valuation), evaluate(sentence.right, valuation))
    raise TypeError(f"not a sentence node: {sentence!r}")


def variables(sentence: Sentence) -> frozenset[int]:
    """All variable indices occurring in a sentence."""
    if isinstance(sentence, Var):
        return frozenset((sentence.index,))
    if isinstance(sentence, Not):
        return variables(sentence.child)
    if isinstance(sentence, (And, Or)):
        return variables(sentence.left) | variables(sentence.right)
    raise TypeError(f"not a sentence node: {sentence!r}")
