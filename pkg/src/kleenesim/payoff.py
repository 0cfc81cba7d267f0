"""Per-variable payoff weights and payoff-proportionate selection weights.

A profile assigns each variable i a weight f_i in [-1, 1].  A valuation
scores the sum of f_i over its true variables minus the sum over its
false variables; borderline variables score 0.  Selection weights shift
the score by n, which keeps them nonnegative because the score can
never fall below -sum(|f_i|) >= -n.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .errors import DimensionMismatch
from .kleene import Valuation
from .rng import BitStream


class PayoffProfile:
    """Immutable vector of per-variable payoffs, each in [-1, 1]."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(x) for x in values)
        if not vals:
            raise ValueError("payoff profile must have at least one entry")
        for i, x in enumerate(vals):
            if not -1.0 <= x <= 1.0:
                raise ValueError(f"payoff f_{i}={x} outside [-1, 1]")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("PayoffProfile is immutable")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PayoffProfile):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"PayoffProfile({list(self.values)!r})"

    def __reduce__(self):
        return (PayoffProfile, (self.values,))

    @classmethod
    def from_file(cls, path: str | Path) -> "PayoffProfile":
        """Read one decimal per line; values outside [-1, 1] are rejected."""
        lines = Path(path).read_text().splitlines()
        vals = []
        for lineno, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                vals.append(float(line))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a decimal number: {line!r}") from None
        if not vals:
            raise ValueError(f"{path}: no payoff values found")
        return cls(vals)

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text("".join(f"{x!r}\n" for x in self.values))


def valuation_payoff(v: Valuation, profile: PayoffProfile) -> float:
    """Sum of f_i over P minus sum over N; borderline contributes 0.

    Accumulates in ascending variable order so results are reproducible
    bit for bit across the simulation kernels.
    """
    if len(profile) != v.n:
        raise DimensionMismatch(f"profile length {len(profile)} != n={v.n}")
    f = profile.values
    pos, neg = v.pos_bits, v.neg_bits
    total = 0.0
    for i in range(v.n):
        if (pos >> i) & 1:
            total += f[i]
        elif (neg >> i) & 1:
            total -= f[i]
    return total


def max_payoff(profile: PayoffProfile) -> float:
    """Highest achievable payoff: sum of |f_i|, attained by the orthopair
    with P = {i: f_i > 0} and N = {i: f_i < 0}."""
    total = 0.0
    for x in profile.values:
        total += abs(x)
    return total


def selection_weight(v: Valuation, profile: PayoffProfile) -> float:
    """Payoff shifted by n; nonnegative for every valuation."""
    return valuation_payoff(v, profile) + v.n


def sample_profile(n: int, rng: BitStream) -> PayoffProfile:
    """Draw each f_i independently, uniformly from [-1, 1).

    Entries are drawn in ascending variable order, one unit draw each.
    """
    if n < 1:
        raise ValueError(f"variable count must be >= 1, got {n}")
    return PayoffProfile(rng.unit() * 2.0 - 1.0 for _ in range(n))
