# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels for connected cell-set enumeration and scans."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def enumerate_connected(cnp.uint64_t[::1] adj, long cap):
    """All connected vertex sets of a graph on at most 64 vertices, as bitmasks.

    Each set is produced once: it is grown from its smallest vertex, and a
    vertex enters the extension frontier only when it first becomes adjacent.
    Raises OverflowError once more than ``cap`` sets exist.
    """
    cdef int n = adj.shape[0]
    if n > 64:
        raise OverflowError("bitmask enumeration supports at most 64 vertices")
    cdef uint64_t sub[65]
    cdef uint64_t ext[65]
    cdef uint64_t nb[65]
    cdef uint64_t allowed, low, newext
    cdef int v, w, depth
    cdef long count = 0
    cdef long size = 1024
    out = np.empty(size, dtype=np.uint64)
    cdef cnp.uint64_t[::1] buf = out
    for v in range(n):
        allowed = 0 if v == 63 else ~((<uint64_t>2 << v) - 1)
        depth = 0
        sub[0] = (<uint64_t>1) << v
        ext[0] = adj[v] & allowed
        nb[0] = adj[v] | sub[0]
        if count >= size:
            size *= 2
            out = np.resize(out, size)
            buf = out
        buf[count] = sub[0]
        count += 1
        while depth >= 0:
            if ext[depth] == 0:
                depth -= 1
                continue
            low = ext[depth] & (~ext[depth] + 1)
            w = __builtin_ctzll(low)
            ext[depth] ^= low
            newext = ext[depth] | (adj[w] & ~nb[depth] & allowed)
            sub[depth + 1] = sub[depth] | low
            nb[depth + 1] = nb[depth] | adj[w]
            ext[depth + 1] = newext
            depth += 1
            if count >= cap:
                raise OverflowError(f"more than {cap} connected sets")
            if count >= size:
                size *= 2
                out = np.resize(out, size)
                buf = out
            buf[count] = sub[depth]
            count += 1
    return out[:count].copy()


def mask_sums(cnp.uint64_t[::1] masks, double[::1] weights):
    """Sum of ``weights`` over the set bits of every mask."""
    cdef Py_ssize_t i, N = masks.shape[0]
    cdef uint64_t x
    cdef double s
    res = np.empty(N, dtype=np.float64)
    cdef double[::1] r = res
    with nogil:
        for i in range(N):
            x = masks[i]
            s = 0.0
            while x:
                s += weights[__builtin_ctzll(x)]
                x &= x - 1
            r[i] = s
    return res


def scan_best(cnp.uint64_t[::1] masks, double[::1] measures, double[::1] y):
    """Index and value of the mask maximizing ``measure * (1 - y(mask))``."""
    cdef Py_ssize_t i, best = -1, N = masks.shape[0]
    cdef uint64_t x
    cdef double s, val, best_val = -1.0
    with nogil:
        for i in range(N):
            x = masks[i]
            s = 0.0
            while x:
                s += y[__builtin_ctzll(x)]
                x &= x - 1
            val = measures[i] * (1.0 - s)
            if val > best_val:
                best_val = val
                best = i
    return best, best_val
