"""
Benchmarking the variants
=========================

The ``bench`` command wraps the functions used here.  Each comparison row
holds mean trial times, percent time saved and a Welch t-test p-value.
Small sizes keep this demo short; the CLI's ``--quick`` and ``--paper``
profiles run the full sweeps.
"""

import sys

from binomial_ga.bench import emit_csv, run_crossover_bench, run_ga_bench, run_mutation_bench
from binomial_ga.ga import CrossoverKind

rows = run_mutation_bench([256, 1024], [1 / 1024, 1 / 16, 1 / 4], ops=5000, trials=10)
rows += run_crossover_bench([1024], [0.1, 0.5], ops=5000, trials=10)
for r in rows:
    print(f"{r.experiment:9s} n={r.n:4d} {r.param}={r.value:.4g}: "
          f"{r.speedup:6.1f}x faster, {r.percent_less:5.1f}% less time, p={r.p_time:.1e}")

# Counting mode replaces timing with exact draw totals.
counted = run_mutation_bench([1024], [1 / 1024], ops=1000, trials=2, count_rng=True)
r = counted[0]
print(f"\n2 x 1000 mutations: simple {r.simple_real_calls} reals; "
      f"optimized {r.optimized_real_calls} reals + {r.optimized_int_calls} ints")

ga = run_ga_bench(CrossoverKind.single_point(), pcs=[0.05, 0.95], trials=4, generations=200)
print()
emit_csv(ga, sys.stdout)
