"""Deterministic random primitives.

Every random decision in the simulator is derived from the raw 64-bit
output of a numpy PCG64 bit generator through the four primitives on
:class:`BitStream`.  The compiled kernel consumes the very same
generator through numpy's C interface and re-implements the same four
primitives, so a run produces bit-identical results on either backend.

Primitive definitions (shared contract with ``_speedups.pyx``):

* ``u64``    -- one raw 64-bit draw.
* ``unit``   -- ``(u64 >> 11) * 2**-53``, uniform double in [0, 1).
* ``below``  -- uniform int in [0, k) by masked rejection; consumes
  nothing for k <= 1.
* ``coin``   -- low bit of one raw draw.
"""

from __future__ import annotations

import numpy as np

_UNIT = 2.0**-53


class BitStream:
    """Primitive draws over one numpy PCG64 bit generator.

    ``draws`` counts raw 64-bit words consumed through *this* wrapper;
    it is a testing aid and is not advanced by the compiled kernel,
    which pulls words straight from :attr:`bit_generator`.
    """

    __slots__ = ("_bitgen", "draws")

    def __init__(self, seed: int | np.random.SeedSequence):
        self._bitgen = np.random.PCG64(seed)
        self.draws = 0

    @property
    def bit_generator(self) -> np.random.PCG64:
        return self._bitgen

    def u64(self) -> int:
        self.draws += 1
        return int(self._bitgen.random_raw())

    def unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits of one draw."""
        return (self.u64() >> 11) * _UNIT

    def below(self, k: int) -> int:
        """Uniform integer in [0, k).

        Masked rejection: draws are masked down to the smallest
        all-ones mask covering k-1 and rejected while >= k, so the
        acceptance probability is always above 1/2.
        """
        if k <= 1:
            return 0
        mask = (1 << (k - 1).bit_length()) - 1
        while True:
            r = self.u64() & mask
            if r < k:
                return r

    def coin(self) -> bool:
        return bool(self.u64() & 1)


def run_seed(master_seed: int, cell_index: int, run_index: int) -> int:
    """Derive the 64-bit seed of one run inside a sweep.

    Uses numpy's SeedSequence over the entropy tuple
    (master_seed, cell_index, run_index), so every run owns an
    independent stream regardless of execution order or worker count.
    """
    ss = np.random.SeedSequence((master_seed, cell_index, run_index))
    return int(ss.generate_state(1, np.uint64)[0])


def stream_for_seed(seed: int) -> BitStream:
    """Stream used by a single run; all of the run's draws come from it."""
    return BitStream(np.random.SeedSequence(seed))
