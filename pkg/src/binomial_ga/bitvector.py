"""Fixed-length bit vectors packed into 32-bit words.

Bit ``i`` lives in ``words[i >> 5]`` at position ``i & 31``.  Bits past
``length`` in the last word are always zero, so whole-word operations
(popcount, equality, xor) never need special casing.

The compiled helpers at the bottom work on raw word arrays; the operator and
GA kernels call them directly.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np
from numba import njit

__all__ = ["BitVector", "word_count", "tail_mask"]

WORD_BITS = 32


def word_count(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def tail_mask(n: int) -> int:
    """Mask of the valid bits in the final word of an n-bit vector."""
    r = n % WORD_BITS
    return 0xFFFFFFFF if r == 0 else (1 << r) - 1


class BitVector:
    """A bit string of fixed ``length`` backed by a ``uint32`` array.

    ``words`` may be a view into a larger array (a population row); all
    in-place operations write through to it.
    """

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise ValueError(f"length must be non-negative, got {length}")
        nw = word_count(length)
        if words is None:
            words = np.zeros(nw, dtype=np.uint32)
        elif words.dtype != np.uint32 or words.shape != (nw,):
            raise ValueError(
                f"expected {nw} uint32 words for length {length}, "
                f"got {words.dtype} array of shape {words.shape}"
            )
        self.length = length
        self.words = words

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        v = cls(n)
        v.words[:] = 0xFFFFFFFF
        v._mask_tail()
        return v

    @classmethod
    def random(cls, n: int, src) -> BitVector:
        """Each bit independently 1 with probability 1/2, one block draw per word."""
        v = cls(n)
        fill_random_words(v.words, n, src)
        return v

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        v = cls(len(bits))
        for i, b in enumerate(bits):
            if b:
                v.flip_bit(i)
        return v

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        """Parse the ``str()`` form: '0'/'1' characters, bit 0 first."""
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls.from_bits(ch == "1" for ch in text)

    @classmethod
    def from_indexes(cls, n: int, indexes: Iterable[int]) -> BitVector:
        v = cls(n)
        for i in indexes:
            v.flip_bit(int(i))
        return v

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.length:
            raise IndexError(f"bit index {i} out of range for length {self.length}")

    def _check_same_length(self, other: BitVector) -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def _mask_tail(self) -> None:
        if self.length % WORD_BITS:
            self.words[-1] &= np.uint32(tail_mask(self.length))

    def flip_bit(self, i: int) -> None:
        self._check_index(i)
        self.words[i >> 5] ^= np.uint32(1 << (i & 31))

    def get_bit(self, i: int) -> int:
        self._check_index(i)
        return int(self.words[i >> 5] >> np.uint32(i & 31)) & 1

    def set_bit(self, i: int, value: int) -> None:
        if self.get_bit(i) != bool(value):
            self.flip_bit(i)

    def popcount(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def copy(self) -> BitVector:
        return BitVector(self.length, self.words.copy())

    def assign(self, other: BitVector) -> None:
        """Overwrite this vector's bits with ``other``'s, in place."""
        self._check_same_length(other)
        self.words[:] = other.words

    def to_bits(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return bits[: self.length]

    def indexes(self) -> np.ndarray:
        """Positions of the set bits, ascending."""
        return np.flatnonzero(self.to_bits())

    def is_canonical(self) -> bool:
        if self.length % WORD_BITS == 0:
            return True
        return int(self.words[-1]) & ~tail_mask(self.length) == 0

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        self._check_same_length(other)
        return BitVector(self.length, self.words ^ other.words)

    def __and__(self, other: BitVector) -> BitVector:
        self._check_same_length(other)
        return BitVector(self.length, self.words & other.words)

    def __or__(self, other: BitVector) -> BitVector:
        self._check_same_length(other)
        return BitVector(self.length, self.words | other.words)

    def __invert__(self) -> BitVector:
        v = BitVector(self.length, ~self.words)
        v._mask_tail()
        return v

    def __ixor__(self, other: BitVector) -> BitVector:
        self._check_same_length(other)
        self.words ^= other.words
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    __hash__ = None  # mutable

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bits())

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"BitVector({self.length}, '{self}')"
        return f"BitVector({self.length}, popcount={self.popcount()})"


# -- compiled word-level helpers -------------------------------------------


@njit(inline="always")
def flip_word_bit(words, i):
    words[i >> 5] ^= np.uint32(1) << np.uint32(i & 31)


@njit
def mask_tail_words(words, n):
    r = n & 31
    if r:
        words[len(words) - 1] &= np.uint32((1 << r) - 1)


@njit
def fill_random_words(words, n, src):
    for w in range(len(words)):
        words[w] = src.next_block32()
    mask_tail_words(words, n)


@njit
def popcount_words(words):
    total = 0
    for w in range(len(words)):
        x = np.uint32(words[w])
        x = x - ((x >> np.uint32(1)) & np.uint32(0x55555555))
        x = (x & np.uint32(0x33333333)) + ((x >> np.uint32(2)) & np.uint32(0x33333333))
        x = (x + (x >> np.uint32(4))) & np.uint32(0x0F0F0F0F)
        total += np.uint32(x * np.uint32(0x01010101)) >> np.uint32(24)
    return total
