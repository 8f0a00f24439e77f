"""
Mutation and crossover, two ways
================================

The simple operators roll a die for every bit.  The optimized ones draw the
number of affected bits once, then pick the positions.  The offspring follow
the same distribution; the random-number bill does not.
"""

import numpy as np

from binomial_ga import (
    BitVector,
    CountingRandomSource,
    from_seed,
    optimized_mutation,
    optimized_uniform_crossover,
    simple_mutation,
    simple_uniform_crossover,
    single_point_crossover,
    two_point_crossover,
)

src = from_seed(11)
v = BitVector.random(48, src)
print("genome   ", v)

w = v.copy()
optimized_mutation(w, 1 / 16, src)
print("mutated  ", w, f"({(v ^ w).popcount()} bits flipped)")

# Draw counts for a single mutation at n=1024, pm=1/1024.
for label, op in [("simple", simple_mutation), ("optimized", optimized_mutation)]:
    counter = CountingRandomSource(from_seed(5))
    op(BitVector.random(1024, src), 1 / 1024, counter)
    print(f"{label:9s} mutation: {counter.real_count} reals, {counter.int_count} ints")

# Both variants flip the same number of bits on average.
for label, op in [("simple", simple_mutation), ("optimized", optimized_mutation)]:
    flips = []
    for _ in range(2000):
        g = BitVector.zeros(256)
        op(g, 1 / 16, src)
        flips.append(g.popcount())
    print(f"{label:9s} mean flips at pm=1/16: {np.mean(flips):.2f} (expect 16)")

# Crossover: ones and zeros make the exchange visible.
a, b = BitVector.zeros(32), BitVector.ones(32)
optimized_uniform_crossover(a, b, 0.25, src)
print("\nuniform   ", a, "/", b)
a, b = BitVector.zeros(32), BitVector.ones(32)
simple_uniform_crossover(a, b, 0.25, src)
print("uniform   ", a, "/", b)
a, b = BitVector.zeros(32), BitVector.ones(32)
c = single_point_crossover(a, b, src)
print("one-point ", a, "/", b, f"cross point {c}")
a, b = BitVector.zeros(32), BitVector.ones(32)
lo, hi = two_point_crossover(a, b, src)
print("two-point ", a, "/", b, f"segment [{lo}, {hi}]")

# pu = 0.5 is special: the mask is just random words.
counter = CountingRandomSource(src)
optimized_uniform_crossover(BitVector.zeros(1024), BitVector.ones(1024), 0.5, counter)
print(f"\npu=0.5 at n=1024: {counter.block_count} block draws, {counter.real_count} reals")
