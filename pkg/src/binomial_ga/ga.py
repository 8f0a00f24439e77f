"""Generational GA on OneMax with simple and binomial-optimized control loops.

A population is a ``(size, words)`` uint32 array, one genome per row, plus a
cached fitness vector.  One generation is: stochastic universal sampling,
a shuffle (so the first pairs form a random subset), crossover, mutation of
every member, re-evaluation.

The simple loop flips a coin per pair to decide crossover and mutates bit by
bit; the optimized loop draws the number of crossovers from
B(size // 2, pc) once and mutates with binomial bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .binomial import BinomialSampler, sample_binomial
from .bitvector import BitVector, fill_random_words, popcount_words, word_count
from .operators import (
    MutationParams,
    UniformCrossoverParams,
    optimized_mutation_words,
    optimized_uniform_crossover_words,
    simple_mutation_words,
    simple_uniform_crossover_words,
    single_point_crossover_words,
    two_point_crossover_words,
)
from .rng import bounded_int, from_seed, shuffle_array

__all__ = [
    "CrossoverKind",
    "GAConfig",
    "Population",
    "RunResult",
    "one_max_fitness",
    "sus_indices",
    "sus_select",
    "simple_generation",
    "optimized_generation",
    "run_ga",
    "VARIANTS",
]

UNIFORM = 0
SINGLE_POINT = 1
TWO_POINT = 2

VARIANTS = ("simple", "optimized")


@dataclass(frozen=True)
class CrossoverKind:
    """``uniform`` (with exchange probability ``pu``), ``onepoint`` or ``twopoint``."""

    name: str
    pu: float = 0.0

    def __post_init__(self):
        if self.name not in ("uniform", "onepoint", "twopoint"):
            raise ValueError(f"unknown crossover kind {self.name!r}")
        if self.name == "uniform":
            UniformCrossoverParams(self.pu)

    @classmethod
    def uniform(cls, pu: float) -> CrossoverKind:
        return cls("uniform", pu)

    @classmethod
    def single_point(cls) -> CrossoverKind:
        return cls("onepoint")

    @classmethod
    def two_point(cls) -> CrossoverKind:
        return cls("twopoint")

    @property
    def code(self) -> int:
        return {"uniform": UNIFORM, "onepoint": SINGLE_POINT, "twopoint": TWO_POINT}[self.name]

    def __str__(self) -> str:
        return f"uniform({self.pu:g})" if self.name == "uniform" else self.name


@dataclass(frozen=True)
class GAConfig:
    genome_bits: int = 1024
    population_size: int = 100
    pc: float = 0.95
    mutation: MutationParams = field(default_factory=lambda: MutationParams(1 / 1024))
    crossover: CrossoverKind = field(default_factory=lambda: CrossoverKind.uniform(0.33))
    generations: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.genome_bits < 2:
            raise ValueError(f"genome_bits must be at least 2, got {self.genome_bits}")
        if self.population_size < 2 or self.population_size % 2:
            raise ValueError(
                f"population_size must be a positive even number, got {self.population_size}"
            )
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"pc must lie in [0, 1], got {self.pc}")
        if self.generations < 1:
            raise ValueError(f"generations must be positive, got {self.generations}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass
class RunResult:
    best_fitness: int
    best_genome: BitVector
    per_generation_best: np.ndarray | None = None


class Population:
    """Genomes stored row-wise in ``words`` with fitness cached in ``fitness``."""

    def __init__(self, genome_bits: int, words: np.ndarray):
        if words.ndim != 2 or words.shape[1] != word_count(genome_bits):
            raise ValueError(f"words must have shape (size, {word_count(genome_bits)})")
        self.genome_bits = genome_bits
        self.words = np.ascontiguousarray(words, dtype=np.uint32)
        self.fitness = np.zeros(len(words), dtype=np.int64)
        self.evaluate()

    @classmethod
    def random(cls, size: int, genome_bits: int, src) -> Population:
        words = np.zeros((size, word_count(genome_bits)), dtype=np.uint32)
        _fill_population(words, genome_bits, src)
        return cls(genome_bits, words)

    @classmethod
    def from_vectors(cls, vectors: list[BitVector]) -> Population:
        n = vectors[0].length
        for v in vectors:
            if v.length != n:
                raise ValueError("all genomes must have the same length")
        return cls(n, np.stack([v.words for v in vectors]))

    def evaluate(self) -> None:
        _evaluate(self.words, self.fitness)

    @property
    def members(self) -> list[BitVector]:
        """Views onto the rows; mutating them mutates the population."""
        return [BitVector(self.genome_bits, row) for row in self.words]

    def __len__(self) -> int:
        return len(self.words)

    def best(self) -> tuple[int, BitVector]:
        i = int(np.argmax(self.fitness))
        return int(self.fitness[i]), BitVector(self.genome_bits, self.words[i].copy())


def one_max_fitness(v: BitVector) -> int:
    """Number of 1-bits."""
    return v.popcount()


# -- kernels ------------------------------------------------------------------


@njit
def _fill_population(words, n, src):
    for i in range(words.shape[0]):
        fill_random_words(words[i], n, src)


@njit
def _evaluate(words, fitness):
    for i in range(words.shape[0]):
        fitness[i] = popcount_words(words[i])


@njit
def sus_indices_kernel(fitness, src):
    size = len(fitness)
    chosen = np.empty(size, dtype=np.int64)
    total = 0
    for i in range(size):
        total += fitness[i]
    if total == 0:
        for i in range(size):
            chosen[i] = bounded_int(src, size)
        return chosen
    spacing = total / size
    pointer = src.next_real() * spacing
    cumulative = float(fitness[0])
    j = 0
    for i in range(size):
        while cumulative <= pointer and j < size - 1:
            j += 1
            cumulative += fitness[j]
        chosen[i] = j
        pointer += spacing
    return chosen


@njit
def _select(words, fitness, src):
    chosen = sus_indices_kernel(fitness, src)
    shuffle_array(src, chosen)
    parents = words.copy()
    parent_fitness = fitness.copy()
    for i in range(len(chosen)):
        words[i, :] = parents[chosen[i]]
        fitness[i] = parent_fitness[chosen[i]]


@njit
def _cross(w1, w2, n, kind, pu, cross_sampler, optimized, src):
    if kind == UNIFORM:
        if optimized:
            optimized_uniform_crossover_words(w1, w2, n, pu, cross_sampler, src)
        else:
            simple_uniform_crossover_words(w1, w2, n, pu, src)
    elif kind == SINGLE_POINT:
        single_point_crossover_words(w1, w2, n, src)
    else:
        two_point_crossover_words(w1, w2, n, src)


@njit
def simple_generation_kernel(words, fitness, n, pc, pm, kind, pu, cross_sampler, src, select):
    if select:
        _select(words, fitness, src)
    pairs = words.shape[0] // 2
    crosses = 0
    for i in range(pairs):
        if src.next_real() < pc:
            _cross(words[i], words[i + pairs], n, kind, pu, cross_sampler, False, src)
            crosses += 1
    for i in range(words.shape[0]):
        simple_mutation_words(words[i], n, pm, src)
    _evaluate(words, fitness)
    return crosses


@njit
def optimized_generation_kernel(
    words, fitness, n, pc, pm, kind, pu, pair_sampler, mut_sampler, cross_sampler, src, select
):
    if select:
        _select(words, fitness, src)
    pairs = sample_binomial(pair_sampler, src)
    for i in range(pairs):
        _cross(words[i], words[i + pairs], n, kind, pu, cross_sampler, True, src)
    for i in range(words.shape[0]):
        optimized_mutation_words(words[i], n, pm, mut_sampler, src)
    _evaluate(words, fitness)
    return pairs


@njit
def run_ga_kernel(words, fitness, n, generations, pc, pm, kind, pu, optimized, src, trace):
    pair_sampler = BinomialSampler(words.shape[0] // 2, pc)
    mut_sampler = BinomialSampler(n, pm)
    cross_sampler = BinomialSampler(n, pu)
    _evaluate(words, fitness)
    best = np.argmax(fitness)
    best_fitness = fitness[best]
    best_words = words[best].copy()
    for g in range(generations):
        if optimized:
            optimized_generation_kernel(
                words, fitness, n, pc, pm, kind, pu, pair_sampler, mut_sampler, cross_sampler, src, True
            )
        else:
            simple_generation_kernel(words, fitness, n, pc, pm, kind, pu, cross_sampler, src, True)
        i = np.argmax(fitness)
        if fitness[i] > best_fitness:
            best_fitness = fitness[i]
            best_words[:] = words[i]
        trace[g] = best_fitness
    return best_words, best_fitness


# -- Python API ---------------------------------------------------------------


def sus_indices(fitness: np.ndarray, src) -> np.ndarray:
    """Member indexes picked by one SUS spin, in wheel order (not shuffled)."""
    return sus_indices_kernel(np.ascontiguousarray(fitness, dtype=np.int64), src)


def sus_select(pop: Population, src) -> Population:
    """Fitness-proportional parents by SUS, returned in random order.

    A population whose total fitness is zero is sampled uniformly instead.
    """
    chosen = sus_indices(pop.fitness, src)
    shuffle_array(src, chosen)
    return Population(pop.genome_bits, pop.words[chosen])


def _crossover_args(crossover: CrossoverKind, n: int) -> tuple[int, float, BinomialSampler]:
    return crossover.code, crossover.pu, BinomialSampler(n, crossover.pu)


def simple_generation(
    pop: Population,
    pc: float,
    mutation: MutationParams,
    crossover: CrossoverKind,
    src,
    selection: bool = True,
) -> int:
    """Advance ``pop`` one generation in place; returns the number of crossovers.

    ``selection=False`` skips the SUS step (the population is then assumed to
    be in random order already).
    """
    if not 0.0 <= pc <= 1.0:
        raise ValueError(f"pc must lie in [0, 1], got {pc}")
    kind, pu, cross_sampler = _crossover_args(crossover, pop.genome_bits)
    return int(
        simple_generation_kernel(
            pop.words, pop.fitness, pop.genome_bits, float(pc), mutation.pm,
            kind, pu, cross_sampler, src, selection,
        )
    )


def optimized_generation(
    pop: Population,
    pc: float,
    mutation: MutationParams,
    crossover: CrossoverKind,
    src,
    selection: bool = True,
) -> int:
    """Binomial-optimized counterpart of :func:`simple_generation`."""
    if not 0.0 <= pc <= 1.0:
        raise ValueError(f"pc must lie in [0, 1], got {pc}")
    kind, pu, cross_sampler = _crossover_args(crossover, pop.genome_bits)
    pair_sampler = BinomialSampler(len(pop) // 2, float(pc))
    mut_sampler = BinomialSampler(pop.genome_bits, mutation.pm)
    return int(
        optimized_generation_kernel(
            pop.words, pop.fitness, pop.genome_bits, float(pc), mutation.pm,
            kind, pu, pair_sampler, mut_sampler, cross_sampler, src, selection,
        )
    )


def run_ga(config: GAConfig, variant: str = "optimized", src=None, trace: bool = False) -> RunResult:
    """One full GA run; deterministic given ``config.seed``.

    Pass ``src`` (e.g. a CountingRandomSource) to override the seeded source.
    The reported solution is the best genome seen in any generation.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if src is None:
        src = from_seed(config.seed)
    n = config.genome_bits
    words = np.zeros((config.population_size, word_count(n)), dtype=np.uint32)
    _fill_population(words, n, src)
    fitness = np.zeros(config.population_size, dtype=np.int64)
    per_gen = np.zeros(config.generations, dtype=np.int64)
    best_words, best_fitness = run_ga_kernel(
        words, fitness, n, config.generations, config.pc, config.mutation.pm,
        config.crossover.code, config.crossover.pu, variant == "optimized", src, per_gen,
    )
    return RunResult(
        best_fitness=int(best_fitness),
        best_genome=BitVector(n, best_words),
        per_generation_best=per_gen if trace else None,
    )

