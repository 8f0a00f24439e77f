"""
A OneMax run
============

OneMax scores a genome by its number of 1-bits.  Both GA variants use
stochastic universal sampling, crossover with rate pc and bit-flip
mutation; they differ only in how they spend random numbers.
"""

import time

from binomial_ga import CrossoverKind, GAConfig, MutationParams, run_ga

config = GAConfig(
    genome_bits=1024,
    population_size=100,
    pc=0.95,
    mutation=MutationParams(1 / 1024),
    crossover=CrossoverKind.uniform(0.33),
    generations=1000,
    seed=2024,
)

run_ga(GAConfig(generations=1), "simple")  # compile first
run_ga(GAConfig(generations=1), "optimized")

for variant in ("simple", "optimized"):
    start = time.perf_counter()
    result = run_ga(config, variant, trace=True)
    elapsed = time.perf_counter() - start
    trace = result.per_generation_best
    print(f"{variant:9s}: best {result.best_fitness} of 1024 in {elapsed:.2f} s; "
          f"after 10/100/1000 generations: {trace[9]}, {trace[99]}, {trace[-1]}")

# A different crossover operator is one argument away.
result = run_ga(GAConfig(crossover=CrossoverKind.two_point(), pc=0.5, seed=1))
print(f"two-point, pc=0.5: best {result.best_fitness}")
