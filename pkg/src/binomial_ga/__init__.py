"""Bit-vector genetic algorithm operators driven by binomial variates.

Mutation and uniform crossover normally draw one random number per bit.
The optimized operators here draw the number of affected bits from a
binomial distribution and then sample that many positions, which needs far
fewer random numbers while producing the same distribution of offspring.
"""

from .binomial import BinomialSampler, binomial_pmf
from .bitvector import BitVector
from .ga import (
    CrossoverKind,
    GAConfig,
    Population,
    RunResult,
    one_max_fitness,
    optimized_generation,
    run_ga,
    simple_generation,
    sus_select,
)
from .operators import (
    MutationParams,
    UniformCrossoverParams,
    optimized_bitmask,
    optimized_mutation,
    optimized_uniform_crossover,
    simple_bitmask,
    simple_mutation,
    simple_uniform_crossover,
    single_point_crossover,
    two_point_crossover,
)
from .rng import CountingRandomSource, RandomSource, from_seed, shuffle
from .sampling import sample, sample_pair
from .stats import SampleSummary, TTestResult, chi_square_gof, summarize, welch_t_test

__version__ = "0.1.0"

__all__ = [
    "BinomialSampler",
    "BitVector",
    "CountingRandomSource",
    "CrossoverKind",
    "GAConfig",
    "MutationParams",
    "Population",
    "RandomSource",
    "RunResult",
    "SampleSummary",
    "TTestResult",
    "UniformCrossoverParams",
    "binomial_pmf",
    "chi_square_gof",
    "from_seed",
    "one_max_fitness",
    "optimized_bitmask",
    "optimized_generation",
    "optimized_mutation",
    "optimized_uniform_crossover",
    "run_ga",
    "sample",
    "sample_pair",
    "shuffle",
    "simple_bitmask",
    "simple_generation",
    "simple_mutation",
    "simple_uniform_crossover",
    "single_point_crossover",
    "summarize",
    "sus_select",
    "two_point_crossover",
    "welch_t_test",
]
