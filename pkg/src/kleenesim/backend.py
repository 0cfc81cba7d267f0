"""Kernel selection: compiled extension when available, pure Python otherwise.

The environment variable KLEENESIM_BACKEND overrides the default:
"compiled" demands the extension (import error if missing), "pure"
forces the reference kernel, "auto" (default) prefers compiled.  Both
kernels produce bit-identical results; only speed differs.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _pyloop
from .consensus import BOOLEAN_STOCHASTIC, THREE_VALUED
from .rng import BitStream

try:
    from . import _speedups
except ImportError:  # extension not built; pure kernel still covers everything
    _speedups = None

_OP_CODES = {THREE_VALUED: 0, BOOLEAN_STOCHASTIC: 1}
_SEL_CODES = {"uniform-random": 0, "payoff-proportionate": 1}

_LIMB = 0xFFFFFFFFFFFFFFFF


def _resolve(requested: str) -> str:
    if requested == "pure":
        return "pure"
    if requested == "compiled":
        if _speedups is None:
            raise RuntimeError(
                "KLEENESIM_BACKEND=compiled but the extension is not built; "
                "reinstall with a C toolchain or use KLEENESIM_BACKEND=pure"
            )
        return "compiled"
    if requested == "auto":
        return "compiled" if _speedups is not None else "pure"
    raise RuntimeError(f"invalid KLEENESIM_BACKEND={requested!r} (auto|compiled|pure)")


DEFAULT_KERNEL = _resolve(os.environ.get("KLEENESIM_BACKEND", "auto"))


def available_kernels() -> tuple[str, ...]:
    return ("pure", "compiled") if _speedups is not None else ("pure",)


def _pack(masks: Sequence[int], limbs: int) -> np.ndarray:
    arr = np.empty((len(masks), limbs), dtype=np.uint64)
    for i, mask in enumerate(masks):
        for w in range(limbs):
            arr[i, w] = (mask >> (64 * w)) & _LIMB
    return arr


def _unpack_into(arr: np.ndarray, out: list[int]) -> None:
    limbs = arr.shape[1]
    for i in range(arr.shape[0]):
        mask = 0
        for w in range(limbs):
            mask |= int(arr[i, w]) << (64 * w)
        out[i] = mask


def _sample_capacity(iterations: int, record_every: int) -> int:
    if iterations <= 0:
        return 1
    extra = 1 if iterations % record_every else 0
    return 1 + iterations // record_every + extra


def _run_compiled(stream, pos, neg, f, n, gamma, op_code, sel_code,
                  iterations, record_every, early_stop):
    limbs = (n + 63) // 64
    pos_arr = _pack(pos, limbs)
    neg_arr = _pack(neg, limbs)
    f_arr = np.asarray(f, dtype=np.float64)
    cap = _sample_capacity(iterations, record_every)
    out_it = np.empty(cap, dtype=np.int64)
    out_distinct = np.empty(cap, dtype=np.int64)
    out_vag = np.empty(cap, dtype=np.float64)
    out_pct = np.empty(cap, dtype=np.float64)
    count = _speedups.run_loop(
        stream.bit_generator, pos_arr, neg_arr, f_arr,
        n, gamma, op_code, sel_code, iterations, record_every, early_stop,
        out_it, out_distinct, out_vag, out_pct,
    )
    _unpack_into(pos_arr, pos)
    _unpack_into(neg_arr, neg)
    return [
        (int(out_it[k]), int(out_distinct[k]), float(out_vag[k]), float(out_pct[k]))
        for k in range(count)
    ]


def run_loop(
    stream: BitStream,
    pos: list[int],
    neg: list[int],
    f: Sequence[float],
    n: int,
    gamma: float,
    operator: str,
    selection: str,
    iterations: int,
    record_every: int,
    early_stop: bool,
    kernel: str | None = None,
) -> list[tuple[int, int, float, float]]:
    """Dispatch one iteration loop to the selected kernel.

    Mutates pos/neg in place and returns the trajectory samples
    (iteration, distinct, vagueness, payoff_pct).
    """
    op_code = _OP_CODES[operator]
    sel_code = _SEL_CODES[selection]
    chosen = _resolve(kernel) if kernel is not None else DEFAULT_KERNEL
    if chosen == "compiled":
        return _run_compiled(stream, pos, neg, f, n, gamma, op_code, sel_code,
                             iterations, record_every, early_stop)
    return _pyloop.run_loop(stream, pos, neg, f, n, gamma, op_code, sel_code,
                            iterations, record_every, early_stop)
