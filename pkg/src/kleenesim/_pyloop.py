"""Pure-Python simulation kernel.

Reference implementation of the iteration loop.  The compiled kernel in
``_speedups.pyx`` mirrors this module draw for draw and float operation
for float operation; any change here must be mirrored there, and the
backend equivalence tests enforce bit-identical results.

Populations are held as parallel lists of bit masks (``pos[i]`` /
``neg[i]`` are the P / N sets of agent i).  All accumulations run in
ascending index order so float results are reproducible.
"""

from __future__ import annotations

from typing import Sequence

from .rng import BitStream

Sample = tuple[int, int, float, float]  # iteration, distinct, vagueness, payoff_pct

OP_THREE_VALUED = 0
OP_BOOLEAN = 1
SEL_UNIFORM = 0
SEL_PAYOFF = 1


def pick_uniform_pair(m: int, rng: BitStream) -> tuple[int, int]:
    """Two distinct indices, uniform over ordered pairs (two draws)."""
    a = rng.below(m)
    b = rng.below(m - 1)
    if b >= a:
        b += 1
    return a, b


def _walk(weights: Sequence[float], x: float, skip: int) -> int:
    """Index whose cumulative weight interval contains x.

    Zero-weight entries are never selected.  Falls back to the last
    positive entry if x lands at or past the final boundary through
    float round-off.
    """
    c = 0.0
    last = -1
    for i, w in enumerate(weights):
        if i == skip or w <= 0.0:
            continue
        c += w
        last = i
        if x < c:
            return i
    return last


def pick_weighted_pair(weights: Sequence[float], rng: BitStream) -> tuple[int, int]:
    """Sequential weighted sampling of two distinct indices.

    The first index is drawn proportionally to the weights; the second
    from the remaining entries with renormalized weights.  All-zero
    weights fall back to uniform selection.
    """
    m = len(weights)
    total = 0.0
    for w in weights:
        total += w
    if total <= 0.0:
        return pick_uniform_pair(m, rng)
    a = _walk(weights, rng.unit() * total, -1)
    rest = total - weights[a]
    if rest <= 0.0:
        b = rng.below(m - 1)
        if b >= a:
            b += 1
        return a, b
    b = _walk(weights, rng.unit() * rest, a)
    return a, b


def _payoff(pos: int, neg: int, f: Sequence[float], n: int) -> float:
    s = 0.0
    for j in range(n):
        if (pos >> j) & 1:
            s += f[j]
        elif (neg >> j) & 1:
            s -= f[j]
    return s


def _measure(
    pos: list[int], neg: list[int], f: Sequence[float], n: int, maxpay: float, t: int
) -> Sample:
    m = len(pos)
    distinct = len({(pos[i], neg[i]) for i in range(m)})
    borderline_total = 0
    for i in range(m):
        borderline_total += n - (pos[i] | neg[i]).bit_count()
    vag = borderline_total / (m * n)
    acc = 0.0
    for i in range(m):
        acc += _payoff(pos[i], neg[i], f, n)
    mean_pay = acc / m
    pct = 100.0 * mean_pay / maxpay if maxpay > 0.0 else 0.0
    return (t, distinct, vag, pct)


def run_loop(
    stream: BitStream,
    pos: list[int],
    neg: list[int],
    f: Sequence[float],
    n: int,
    gamma: float,
    op_code: int,
    sel_code: int,
    iterations: int,
    record_every: int,
    early_stop: bool,
) -> list[Sample]:
    """Run the iteration loop in place on pos/neg; return trajectory samples.

    Samples are taken at iteration 0, every ``record_every`` iterations
    and at the final iteration.  With ``early_stop`` the loop ends at
    the iteration where the population first becomes uniform, recording
    one final sample there.
    """
    m = len(pos)
    maxpay = 0.0
    for x in f:
        maxpay += abs(x)

    weights: list[float] | None = None
    if sel_code == SEL_PAYOFF:
        weights = []
        for i in range(m):
            w = _payoff(pos[i], neg[i], f, n) + n
            weights.append(w if w > 0.0 else 0.0)

    samples = [_measure(pos, neg, f, n, maxpay, 0)]
    for t in range(1, iterations + 1):
        if weights is None:
            a, b = pick_uniform_pair(m, stream)
        else:
            a, b = pick_weighted_pair(weights, stream)

        conflicts = (pos[a] & neg[b]).bit_count() + (pos[b] & neg[a]).bit_count()
        if conflicts / n <= gamma:
            if op_code == OP_THREE_VALUED:
                new_pos = (pos[a] & ~neg[b]) | (pos[b] & ~neg[a])
                new_neg = (neg[a] & ~pos[b]) | (neg[b] & ~pos[a])
            else:
                conflict = (pos[a] & neg[b]) | (pos[b] & neg[a])
                new_pos = pos[a] & pos[b]
                new_neg = neg[a] & neg[b]
                for j in range(n):
                    bit = 1 << j
                    if conflict & bit:
                        if stream.coin():
                            new_pos |= bit
                        else:
                            new_neg |= bit
            pos[a] = pos[b] = new_pos
            neg[a] = neg[b] = new_neg
            if weights is not None:
                w = _payoff(new_pos, new_neg, f, n) + n
                if w < 0.0:
                    w = 0.0
                weights[a] = weights[b] = w
            if early_stop and all(pos[i] == new_pos and neg[i] == new_neg for i in range(m)):
                samples.append(_measure(pos, neg, f, n, maxpay, t))
                break
        if t % record_every == 0 or t == iterations:
            samples.append(_measure(pos, neg, f, n, maxpay, t))
    return samples
