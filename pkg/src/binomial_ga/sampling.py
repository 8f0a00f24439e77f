"""Distinct random indices from {0, ..., n-1}.

:func:`sample` picks whichever of reservoir, pool or insertion sampling
needs the fewest bounded-integer draws, so it always consumes exactly
``min(k, n - k)`` of them.  :func:`sample_pair` is the two-draw special case
used for two-point crossover.

All kernels take the random source as their last argument and return int64
numpy arrays.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .rng import bounded_int

__all__ = [
    "sample",
    "reservoir_sample",
    "pool_sample",
    "insertion_sample",
    "sample_pair",
    "RESERVOIR",
    "POOL",
    "INSERTION",
    "choose_method",
]

RESERVOIR = 0
POOL = 1
INSERTION = 2


@njit(inline="always")
def _check(n, k):
    if k < 0 or k > n:
        raise ValueError("sample size k must satisfy 0 <= k <= n")


@njit
def reservoir_sample(n, k, src):
    _check(n, k)
    s = np.empty(k, dtype=np.int64)
    for i in range(k):
        s[i] = i
    for i in range(k, n):
        j = bounded_int(src, i + 1)
        if j < k:
            s[j] = i
    return s


@njit
def pool_sample(n, k, src):
    _check(n, k)
    s = np.empty(k, dtype=np.int64)
    if k == 0:
        return s
    pool = np.empty(n, dtype=np.int64)
    for i in range(n):
        pool[i] = i
    m = n
    for i in range(k):
        j = bounded_int(src, m)
        s[i] = pool[j]
        m -= 1
        pool[j] = pool[m]
    return s


@njit(inline="always")
def insertion_sample(n, k, src):
    """Ascending k-subset; O(k^2) time, k draws."""
    _check(n, k)
    s = np.empty(k, dtype=np.int64)
    for i in range(k):
        v = bounded_int(src, n - i)
        j = k - i
        while j < k and v >= s[j]:
            v += 1
            s[j - 1] = s[j]
            j += 1
        s[j - 1] = v
    return s


@njit(inline="always")
def choose_method(n, k):
    """Which component sampler :func:`sample` dispatches to for (n, k)."""
    # k >= n/2 and k >= sqrt(n), both in exact integer arithmetic
    if 2 * k >= n:
        return RESERVOIR
    if k * k >= n:
        return POOL
    return INSERTION


@njit(inline="always")
def sample(n, k, src):
    """Uniform k-subset of range(n); element order is unspecified."""
    _check(n, k)
    method = choose_method(n, k)
    if method == RESERVOIR:
        return reservoir_sample(n, k, src)
    if method == POOL:
        return pool_sample(n, k, src)
    return insertion_sample(n, k, src)


@njit
def sample_pair(n, src):
    """Two distinct indexes in [0, n) from exactly two bounded draws."""
    if n < 2:
        raise ValueError("sample_pair needs n >= 2")
    i = bounded_int(src, n)
    j = bounded_int(src, n - 1)
    if j >= i:
        j += 1
    return i, j
