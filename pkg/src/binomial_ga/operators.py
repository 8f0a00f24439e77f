"""Bitmask, bit-flip mutation and crossover operators.

Every operator comes as a compiled kernel over raw ``uint32`` word arrays
(``*_words``), which the GA loop and the benchmark harness call, and a
validating wrapper over :class:`~binomial_ga.bitvector.BitVector`.

The "simple" variants draw one uniform real per bit.  The "optimized"
variants draw the number of set bits k ~ B(n, p) once and then sample which
k positions, so they use O(n min(p, 1-p)) random numbers instead of n.
Mutation and crossover work in place, as in the pseudocode they follow:
crossover overwrites both parents with the children.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .binomial import BinomialSampler, sample_binomial
from .bitvector import BitVector, fill_random_words, flip_word_bit
from .rng import bounded_int
from .sampling import sample, sample_pair

__all__ = [
    "MutationParams",
    "UniformCrossoverParams",
    "simple_bitmask",
    "optimized_bitmask",
    "simple_mutation",
    "optimized_mutation",
    "apply_crossover_mask",
    "simple_uniform_crossover",
    "optimized_uniform_crossover",
    "single_point_crossover",
    "two_point_crossover",
]


def _check_probability(name: str, p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class MutationParams:
    """Bit-flip mutation rate."""

    pm: float

    def __post_init__(self):
        _check_probability("pm", self.pm)


@dataclass(frozen=True)
class UniformCrossoverParams:
    """Per-bit exchange probability of uniform crossover."""

    pu: float

    def __post_init__(self):
        _check_probability("pu", self.pu)


# -- kernels ------------------------------------------------------------------


@njit
def simple_bitmask_words(n, p, src):
    words = np.zeros((n + 31) >> 5, dtype=np.uint32)
    for i in range(n):
        if src.next_real() < p:
            flip_word_bit(words, i)
    return words


@njit(inline="always")
def optimized_bitmask_words(n, p, sampler, src):
    """``sampler`` must be a BinomialSampler for (n, p); unused when p == 0.5."""
    words = np.zeros((n + 31) >> 5, dtype=np.uint32)
    if p == 0.5:
        fill_random_words(words, n, src)
        return words
    k = sample_binomial(sampler, src)
    idx = sample(n, k, src)
    for t in range(k):
        flip_word_bit(words, idx[t])
    return words


@njit
def simple_mutation_words(words, n, pm, src):
    for i in range(n):
        if src.next_real() < pm:
            flip_word_bit(words, i)


@njit
def optimized_mutation_words(words, n, pm, sampler, src):
    mask = optimized_bitmask_words(n, pm, sampler, src)
    for w in range(len(words)):
        words[w] ^= mask[w]


@njit
def apply_mask_words(w1, w2, mask):
    # child1 takes v2 where mask is set, child2 takes v1 there
    for w in range(len(w1)):
        a = w1[w]
        b = w2[w]
        m = mask[w]
        w2[w] = (a & m) | (b & ~m)
        w1[w] = (b & m) | (a & ~m)


@njit
def simple_uniform_crossover_words(w1, w2, n, pu, src):
    apply_mask_words(w1, w2, simple_bitmask_words(n, pu, src))


@njit
def optimized_uniform_crossover_words(w1, w2, n, pu, sampler, src):
    apply_mask_words(w1, w2, optimized_bitmask_words(n, pu, sampler, src))


@njit
def exchange_range_words(w1, w2, lo, hi):
    """Swap bits lo..hi (inclusive) between the two word arrays."""
    first = lo >> 5
    last = hi >> 5
    for w in range(first, last + 1):
        m = np.uint32(0xFFFFFFFF)
        if w == first:
            m &= np.uint32(0xFFFFFFFF) << np.uint32(lo & 31)
        if w == last:
            m &= np.uint32(0xFFFFFFFF) >> np.uint32(31 - (hi & 31))
        t = (w1[w] ^ w2[w]) & m
        w1[w] ^= t
        w2[w] ^= t


@njit
def single_point_crossover_words(w1, w2, n, src):
    """Exchange every bit at or after a cross point drawn from [1, n-1]."""
    c = bounded_int(src, n - 1) + 1
    exchange_range_words(w1, w2, c, n - 1)
    return c


@njit
def two_point_crossover_words(w1, w2, n, src):
    """Exchange the inclusive segment between two distinct sampled indexes."""
    i, j = sample_pair(n, src)
    lo = min(i, j)
    hi = max(i, j)
    exchange_range_words(w1, w2, lo, hi)
    return lo, hi


# -- BitVector-level API -------------------------------------------------------


def _sampler_for(n: int, p: float, sampler: BinomialSampler | None) -> BinomialSampler:
    if sampler is None:
        return BinomialSampler(n, p)
    if sampler.n != n or sampler.p != p:
        raise ValueError(f"sampler is for B({sampler.n}, {sampler.p}), need B({n}, {p})")
    return sampler


def simple_bitmask(n: int, p: float, src) -> BitVector:
    """Mask with each bit set independently with probability p; n real draws."""
    p = _check_probability("p", p)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return BitVector(n, simple_bitmask_words(n, p, src))


def optimized_bitmask(n: int, p: float, src, sampler: BinomialSampler | None = None) -> BitVector:
    """Same distribution as :func:`simple_bitmask` from one binomial draw plus a sample.

    ``p == 0.5`` exactly is filled 32 bits at a time from block draws.
    Pass a prebuilt ``sampler`` to skip the per-call setup.
    """
    p = _check_probability("p", p)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return BitVector(n, optimized_bitmask_words(n, p, _sampler_for(n, p, sampler), src))


def simple_mutation(v: BitVector, pm: float, src) -> None:
    pm = _check_probability("pm", pm)
    simple_mutation_words(v.words, v.length, pm, src)


def optimized_mutation(v: BitVector, pm: float, src, sampler: BinomialSampler | None = None) -> None:
    pm = _check_probability("pm", pm)
    optimized_mutation_words(v.words, v.length, pm, _sampler_for(v.length, pm, sampler), src)


def apply_crossover_mask(v1: BitVector, v2: BitVector, mask: BitVector) -> None:
    """Uniform crossover with a given exchange mask (bits set = exchange)."""
    v1._check_same_length(v2)
    v1._check_same_length(mask)
    apply_mask_words(v1.words, v2.words, mask.words)


def simple_uniform_crossover(v1: BitVector, v2: BitVector, pu: float, src) -> None:
    pu = _check_probability("pu", pu)
    v1._check_same_length(v2)
    simple_uniform_crossover_words(v1.words, v2.words, v1.length, pu, src)


def optimized_uniform_crossover(
    v1: BitVector, v2: BitVector, pu: float, src, sampler: BinomialSampler | None = None
) -> None:
    pu = _check_probability("pu", pu)
    v1._check_same_length(v2)
    s = _sampler_for(v1.length, pu, sampler)
    optimized_uniform_crossover_words(v1.words, v2.words, v1.length, pu, s, src)


def _check_cross_pair(v1: BitVector, v2: BitVector) -> None:
    v1._check_same_length(v2)
    if v1.length < 2:
        raise ValueError(f"crossover needs at least 2 bits, got {v1.length}")


def single_point_crossover(v1: BitVector, v2: BitVector, src) -> int:
    """Swap the tails from a uniform cross point in [1, n-1]; returns the point."""
    _check_cross_pair(v1, v2)
    return int(single_point_crossover_words(v1.words, v2.words, v1.length, src))


def two_point_crossover(v1: BitVector, v2: BitVector, src) -> tuple[int, int]:
    """Swap an inclusive segment [lo, hi]; returns (lo, hi)."""
    _check_cross_pair(v1, v2)
    lo, hi = two_point_crossover_words(v1.words, v2.words, v1.length, src)
    return int(lo), int(hi)

