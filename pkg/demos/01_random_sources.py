"""
Random sources and binomial variates
====================================

Everything random in the package flows through a ``RandomSource``.  A
``CountingRandomSource`` wraps one and tallies what was asked of it, which is
how the rest of these demos talk about cost without a stopwatch.
"""

import numpy as np

from binomial_ga import BinomialSampler, CountingRandomSource, binomial_pmf, from_seed

src = from_seed(2024)
print("three reals:", [round(src.next_real(), 4) for _ in range(3)])
print("dice rolls: ", [src.next_int(6) + 1 for _ in range(10)])

# Same seed, same stream.
a, b = from_seed(7), from_seed(7)
assert [a.next_int(100) for _ in range(5)] == [b.next_int(100) for _ in range(5)]

# A binomial variate answers "how many of n coin flips came up heads"
# without flipping n coins.
counter = CountingRandomSource(from_seed(1))
sampler = BinomialSampler(1024, 1 / 1024)
draws = np.array([sampler.sample(counter) for _ in range(20_000)])
print(f"\nB(1024, 1/1024): mean {draws.mean():.3f}, "
      f"{counter.real_count / len(draws):.2f} uniforms per variate")

pmf = binomial_pmf(1024, 1 / 1024)
for k in range(5):
    print(f"  P(k={k}) exact {pmf[k]:.4f}  observed {np.mean(draws == k):.4f}")

# For large n*p the sampler switches to BTPE, whose cost stays flat as n grows.
for n in (2**10, 2**13, 2**16):
    counter.reset()
    s = BinomialSampler(n, 0.3)
    for _ in range(20_000):
        s.sample(counter)
    print(f"B({n}, 0.3): {counter.real_count / 20_000:.2f} uniforms per variate")
