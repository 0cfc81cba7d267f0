# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled simulation kernel.

Mirror of ``_pyloop`` operating on limb arrays (uint64 words, little
endian: word w holds variables 64w .. 64w+63).  It consumes raw 64-bit
words straight from the shared PCG64 generator through numpy's C
interface, with the same primitive definitions as rng.BitStream, so
runs are bit-identical across the two kernels.  Any semantic change in
``_pyloop`` must be mirrored here.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport fabs
from numpy.random cimport bitgen_t

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline int popcount64(unsigned long long x)
    { return __builtin_popcountll(x); }
    """
    int popcount64(u64 x) nogil

cdef double UNIT = 1.0 / 9007199254740992.0  # 2**-53


cdef inline u64 next_u64(bitgen_t *bg) nogil:
    return bg.next_uint64(bg.state)


cdef inline double unit(bitgen_t *bg) nogil:
    return <double> (next_u64(bg) >> 11) * UNIT


cdef inline Py_ssize_t below(bitgen_t *bg, Py_ssize_t k) nogil:
    # masked rejection; consumes nothing for k <= 1 (mirrors BitStream.below)
    if k <= 1:
        return 0
    cdef u64 mask = <u64> (k - 1)
    mask |= mask >> 1
    mask |= mask >> 2
    mask |= mask >> 4
    mask |= mask >> 8
    mask |= mask >> 16
    mask |= mask >> 32
    cdef u64 r
    while True:
        r = next_u64(bg) & mask
        if r < <u64> k:
            return <Py_ssize_t> r


cdef inline bint coin(bitgen_t *bg) nogil:
    return <bint> (next_u64(bg) & 1ULL)


cdef inline double payoff_row(u64[:, ::1] pos, u64[:, ::1] neg, Py_ssize_t i,
                              double[::1] f, Py_ssize_t n) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t j
    cdef u64 bit
    for j in range(n):
        bit = 1ULL << (j & 63)
        if pos[i, j >> 6] & bit:
            s += f[j]
        elif neg[i, j >> 6] & bit:
            s -= f[j]
    return s


cdef inline Py_ssize_t walk(double[::1] weights, double x, Py_ssize_t skip) nogil:
    cdef double c = 0.0
    cdef Py_ssize_t last = -1
    cdef Py_ssize_t i
    for i in range(weights.shape[0]):
        if i == skip or weights[i] <= 0.0:
            continue
        c += weights[i]
        last = i
        if x < c:
            return i
    return last


cdef Py_ssize_t measure(u64[:, ::1] pos, u64[:, ::1] neg, double[::1] f,
                        Py_ssize_t n, double maxpay, long long t, Py_ssize_t k,
                        long long[::1] out_it, long long[::1] out_distinct,
                        double[::1] out_vag, double[::1] out_pct) except -1:
    cdef Py_ssize_t m = pos.shape[0]
    cdef Py_ssize_t limbs = pos.shape[1]
    cdef Py_ssize_t i, w
    cdef long long borderline_total = 0
    cdef int definite
    cdef double acc = 0.0, mean_pay, pct
    if k >= out_it.shape[0]:
        raise RuntimeError("trajectory buffer overflow (capacity miscomputed)")
    seen = set()
    for i in range(m):
        key = []
        for w in range(limbs):
            key.append(pos[i, w])
        for w in range(limbs):
            key.append(neg[i, w])
        seen.add(tuple(key))
        definite = 0
        for w in range(limbs):
            definite += popcount64(pos[i, w] | neg[i, w])
        borderline_total += n - definite
        acc += payoff_row(pos, neg, i, f, n)
    mean_pay = acc / <double> m
    pct = 100.0 * mean_pay / maxpay if maxpay > 0.0 else 0.0
    out_it[k] = t
    out_distinct[k] = <long long> len(seen)
    out_vag[k] = <double> borderline_total / <double> (m * n)
    out_pct[k] = pct
    return k + 1


def run_loop(object bit_generator,
             u64[:, ::1] pos, u64[:, ::1] neg, double[::1] f,
             Py_ssize_t n, double gamma, int op_code, int sel_code,
             long long iterations, long long record_every, bint early_stop,
             long long[::1] out_it, long long[::1] out_distinct,
             double[::1] out_vag, double[::1] out_pct):
    """Run the iteration loop in place; returns the number of samples."""
    cdef bitgen_t *bg = <bitgen_t *> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")
    cdef Py_ssize_t m = pos.shape[0]
    cdef Py_ssize_t limbs = pos.shape[1]
    cdef Py_ssize_t a, b, i, w, j, k
    cdef long long t, conflicts
    cdef double total, rest, pay, maxpay = 0.0
    cdef u64 bit
    cdef bint converged

    for j in range(n):
        maxpay += fabs(f[j])

    cdef double[::1] weights = None
    if sel_code == 1:
        weights = np.empty(m, dtype=np.float64)
        for i in range(m):
            pay = payoff_row(pos, neg, i, f, n) + <double> n
            weights[i] = pay if pay > 0.0 else 0.0

    scratch = np.empty((3, limbs), dtype=np.uint64)
    cdef u64[:, ::1] new = scratch  # rows: new_pos, new_neg, conflict mask

    k = measure(pos, neg, f, n, maxpay, 0, 0,
                out_it, out_distinct, out_vag, out_pct)

    for t in range(1, iterations + 1):
        if sel_code == 0:
            a = below(bg, m)
            b = below(bg, m - 1)
            if b >= a:
                b += 1
        else:
            total = 0.0
            for i in range(m):
                total += weights[i]
            if total <= 0.0:
                a = below(bg, m)
                b = below(bg, m - 1)
                if b >= a:
                    b += 1
            else:
                a = walk(weights, unit(bg) * total, -1)
                rest = total - weights[a]
                if rest <= 0.0:
                    b = below(bg, m - 1)
                    if b >= a:
                        b += 1
                else:
                    b = walk(weights, unit(bg) * rest, a)

        conflicts = 0
        for w in range(limbs):
            conflicts += popcount64(pos[a, w] & neg[b, w])
            conflicts += popcount64(pos[b, w] & neg[a, w])
        if <double> conflicts / <double> n <= gamma:
            if op_code == 0:
                for w in range(limbs):
                    new[0, w] = (pos[a, w] & ~neg[b, w]) | (pos[b, w] & ~neg[a, w])
                    new[1, w] = (neg[a, w] & ~pos[b, w]) | (neg[b, w] & ~pos[a, w])
            else:
                for w in range(limbs):
                    new[2, w] = (pos[a, w] & neg[b, w]) | (pos[b, w] & neg[a, w])
                    new[0, w] = pos[a, w] & pos[b, w]
                    new[1, w] = neg[a, w] & neg[b, w]
                for j in range(n):
                    bit = 1ULL << (j & 63)
                    if new[2, j >> 6] & bit:
                        if coin(bg):
                            new[0, j >> 6] |= bit
                        else:
                            new[1, j >> 6] |= bit
            for w in range(limbs):
                pos[a, w] = new[0, w]
                neg[a, w] = new[1, w]
                pos[b, w] = new[0, w]
                neg[b, w] = new[1, w]
            if sel_code == 1:
                pay = payoff_row(pos, neg, a, f, n) + <double> n
                if pay < 0.0:
                    pay = 0.0
                weights[a] = pay
                weights[b] = pay
            if early_stop:
                converged = True
                for i in range(m):
                    for w in range(limbs):
                        if pos[i, w] != new[0, w] or neg[i, w] != new[1, w]:
                            converged = False
                            break
                    if not converged:
                        break
                if converged:
                    k = measure(pos, neg, f, n, maxpay, t, k,
                                out_it, out_distinct, out_vag, out_pct)
                    return k
        if t % record_every == 0 or t == iterations:
            k = measure(pos, neg, f, n, maxpay, t, k,
                        out_it, out_distinct, out_vag, out_pct)
    return k


def raw_probe(object bit_generator, Py_ssize_t count):
    """Raw 64-bit draws through the C interface (stream-identity tests)."""
    cdef bitgen_t *bg = <bitgen_t *> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")
    out = []
    cdef Py_ssize_t i
    for i in range(count):
        out.append(next_u64(bg))
    return out
