"""Seedable uniform randomness for every kernel in the package.

``RandomSource`` is a numba jitclass wrapping xoshiro256** (seeded through
splitmix64).  It can be driven from Python, but its real purpose is to be
passed into the ``@njit`` kernels of the other modules, where each draw
compiles down to a handful of instructions.

``CountingRandomSource`` wraps a ``RandomSource`` and tallies draws by kind.
Numba compiles a separate specialization of every kernel for it, so the
production path never pays for the counters.
"""

from __future__ import annotations

from typing import Any, MutableSequence

import numpy as np
from numba import int64, njit, uint64
from numba.experimental import jitclass

__all__ = [
    "RandomSource",
    "CountingRandomSource",
    "from_seed",
    "bounded_int",
    "shuffle",
]

_U1 = np.uint64(1)
_U7 = np.uint64(7)
_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U19 = np.uint64(19)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U32 = np.uint64(32)
_U45 = np.uint64(45)
_U57 = np.uint64(57)
_MUL5 = np.uint64(5)
_MUL9 = np.uint64(9)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_SM1 = np.uint64(0xBF58476D1CE4E5B9)
_SM2 = np.uint64(0x94D049BB133111EB)
_LOW32 = np.uint64(0xFFFFFFFF)
_TWO32 = np.uint64(1 << 32)
_INV_2_53 = 1.0 / 9007199254740992.0

MAX_BOUND = 1 << 32


@njit(inline="always")
def _splitmix64(x):
    # returns (new_state, output)
    x = x + _GOLDEN
    z = x
    z = (z ^ (z >> _U30)) * _SM1
    z = (z ^ (z >> _U27)) * _SM2
    return x, z ^ (z >> _U31)


@njit(inline="always")
def bounded_int(src, bound):
    """Uniform integer in [0, bound) by Lemire's multiply-and-compare.

    Kernels call this rather than ``src.next_int`` so the whole draw is
    inlined into the caller's loop.
    """
    src.tally_int()
    b = np.uint64(bound)
    m = (src.next_u64() >> _U32) * b
    # "low < bound", written so that bound == 0 also takes this branch
    if (m & _LOW32) <= b - _U1:
        if bound < 1 or bound > MAX_BOUND:
            raise ValueError("bound must be in [1, 2**32]")
        threshold = (_TWO32 - b) % b
        while (m & _LOW32) < threshold:
            m = (src.next_u64() >> _U32) * b
    return int64(m >> _U32)


@jitclass(
    [
        ("seed", uint64),
        ("s0", uint64),
        ("s1", uint64),
        ("s2", uint64),
        ("s3", uint64),
    ]
)
class RandomSource:
    """xoshiro256** generator.

    Construct with a non-negative seed below 2**63 (or any ``np.uint64``);
    use :func:`from_seed` to accept the full unsigned 64-bit range.
    """

    def __init__(self, seed):
        self.seed = np.uint64(seed)
        x = self.seed
        x, self.s0 = _splitmix64(x)
        x, self.s1 = _splitmix64(x)
        x, self.s2 = _splitmix64(x)
        x, self.s3 = _splitmix64(x)

    def next_u64(self):
        s1 = self.s1
        r = s1 * _MUL5
        r = ((r << _U7) | (r >> _U57)) * _MUL9
        t = s1 << _U17
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = (self.s3 << _U45) | (self.s3 >> _U19)
        return r

    def next_real(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return float((self.next_u64() >> _U11)) * _INV_2_53

    def next_int(self, bound):
        """Uniform integer in [0, bound), 1 <= bound <= 2**32."""
        return bounded_int(self, bound)

    def tally_int(self):
        pass

    def next_block32(self):
        """32 independent fair bits as an unsigned word."""
        return np.uint32(self.next_u64() >> _U32)


@jitclass(
    [
        ("inner", RandomSource.class_type.instance_type),
        ("real_count", int64),
        ("int_count", int64),
        ("block_count", int64),
    ]
)
class CountingRandomSource:
    """Wraps a RandomSource and counts draws by kind; values pass through unchanged."""

    def __init__(self, inner):
        self.inner = inner
        self.real_count = 0
        self.int_count = 0
        self.block_count = 0

    def next_u64(self):
        return self.inner.next_u64()

    def next_real(self):
        self.real_count += 1
        return self.inner.next_real()

    def next_int(self, bound):
        return bounded_int(self, bound)

    def tally_int(self):
        self.int_count += 1

    def next_block32(self):
        self.block_count += 1
        return self.inner.next_block32()

    def total(self):
        return self.real_count + self.int_count + self.block_count

    def reset(self):
        self.real_count = 0
        self.int_count = 0
        self.block_count = 0


def from_seed(seed: int) -> RandomSource:
    """Build a RandomSource from any integer in [0, 2**64)."""
    seed = int(seed)
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return RandomSource(np.uint64(seed))


@njit
def shuffle_array(src, items):
    """In-place Fisher-Yates over the first axis of a numpy array."""
    for i in range(len(items) - 1, 0, -1):
        j = bounded_int(src, i + 1)
        if j != i:
            tmp = items[i]
            items[i] = items[j]
            items[j] = tmp


def shuffle(src: Any, items: MutableSequence) -> MutableSequence:
    """Permute ``items`` in place uniformly at random and return it.

    1-d numpy arrays go through the compiled kernel; any other mutable
    sequence is shuffled with the same Fisher-Yates draws from Python.
    """
    if isinstance(items, np.ndarray) and items.ndim == 1:
        shuffle_array(src, items)
        return items
    for i in range(len(items) - 1, 0, -1):
        j = src.next_int(i + 1)
        items[i], items[j] = items[j], items[i]
    return items
