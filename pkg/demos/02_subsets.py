"""
Choosing k positions out of n
=============================

After a binomial draw says *how many* bits change, ``sample`` says *which*.
It picks among reservoir, pool and insertion sampling so that it never
spends more than min(k, n - k) bounded-integer draws.
"""

from collections import Counter
from itertools import combinations

from binomial_ga import CountingRandomSource, from_seed, sample, sample_pair

src = from_seed(3)
print("5 of 20:", sorted(sample(20, 5, src).tolist()))
print("18 of 20:", sorted(sample(20, 18, src).tolist()))

counter = CountingRandomSource(src)
for n, k in [(1024, 1), (1024, 40), (1024, 600), (1024, 1020)]:
    counter.reset()
    sample(n, k, counter)
    print(f"sample({n}, {k:4d}) used {counter.int_count} bounded-int draws")

# Every 3-subset of 8 should be equally likely.
tally = Counter(tuple(sorted(sample(8, 3, src).tolist())) for _ in range(56_000))
print(f"\n{len(tally)} of {len(list(combinations(range(8), 3)))} subsets seen, "
      f"counts range {min(tally.values())}..{max(tally.values())} (expect ~1000)")

# Two distinct indexes, as used by two-point crossover.
print("pairs from 5:", [sample_pair(5, src) for _ in range(4)])
