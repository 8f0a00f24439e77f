import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kernels
from conftest import ALPHA, exact_binomial_pmf, histogram_p_value, homogeneity_p_value
from binomial_ga.binomial import BinomialSampler
from binomial_ga.bitvector import BitVector
from binomial_ga.operators import (
    MutationParams,
    UniformCrossoverParams,
    apply_crossover_mask,
    optimized_bitmask,
    optimized_mutation,
    optimized_uniform_crossover,
    simple_bitmask,
    simple_mutation,
    simple_uniform_crossover,
    single_point_crossover,
    two_point_crossover,
)
from binomial_ga.rng import CountingRandomSource, RandomSource

BITMASKS = [simple_bitmask, optimized_bitmask]
MUTATIONS = [simple_mutation, optimized_mutation]
UNIFORMS = [simple_uniform_crossover, optimized_uniform_crossover]


def random_pair(n, src):
    return BitVector.random(n, src), BitVector.random(n, src)


def test_params_validation():
    assert MutationParams(0.0).pm == 0.0
    assert UniformCrossoverParams(1.0).pu == 1.0
    for bad in (-0.1, 1.5, float("nan")):
        with pytest.raises(ValueError):
            MutationParams(bad)
        with pytest.raises(ValueError):
            UniformCrossoverParams(bad)


@pytest.mark.parametrize("fn", BITMASKS)
@pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
def test_bitmask_rejects_bad_p(src, fn, p):
    with pytest.raises(ValueError):
        fn(16, p, src)


def test_simple_bitmask_edges(counting):
    assert simple_bitmask(100, 0.0, counting) == BitVector.zeros(100)
    assert counting.real_count == 100
    assert simple_bitmask(100, 1.0, counting) == BitVector.ones(100)
    assert counting.real_count == 200


def test_optimized_bitmask_edges(counting):
    assert optimized_bitmask(100, 0.0, counting) == BitVector.zeros(100)
    assert counting.total() == 0
    assert optimized_bitmask(100, 1.0, counting) == BitVector.ones(100)


def test_half_probability_uses_blocks(counting):
    m = optimized_bitmask(64, 0.5, counting)
    assert (counting.block_count, counting.int_count, counting.real_count) == (2, 0, 0)
    assert m.is_canonical()
    counting.reset()
    optimized_bitmask(70, 0.5, counting)
    assert counting.block_count == 3


def test_rejects_mismatched_sampler(src):
    with pytest.raises(ValueError):
        optimized_bitmask(64, 0.1, src, sampler=BinomialSampler(64, 0.2))
    s = BinomialSampler(64, 0.1)
    assert len(optimized_bitmask(64, 0.1, src, sampler=s)) == 64


def test_simple_bitmask_mean(src):
    counts = kernels.mask_popcounts(1024, 0.25, BinomialSampler(1024, 0.25), src, 10_000, False)
    assert abs(counts.mean() - 256) <= 4.3


def test_optimized_bitmask_pmf(src):
    n, p = 1024, 1 / 1024
    counts = kernels.mask_popcounts(n, p, BinomialSampler(n, p), src, 10**6, True)
    assert histogram_p_value(counts, exact_binomial_pmf(n, p)) > ALPHA


def test_optimized_bitmask_draw_counts():
    n, p = 200, 0.1
    sampler = BinomialSampler(n, p)
    for seed in range(200):
        c = CountingRandomSource(RandomSource(seed))
        mask = optimized_bitmask(n, p, c, sampler)
        # the binomial draw comes first, so a same-seed replay recovers k and its cost
        replay = CountingRandomSource(RandomSource(seed))
        k = sampler.sample(replay)
        assert mask.popcount() == k
        assert c.real_count == replay.real_count
        assert c.int_count == replay.int_count + min(k, n - k)
        assert c.block_count == 0


@pytest.mark.parametrize("fn", MUTATIONS)
def test_mutation_edges(src, fn):
    v = BitVector.random(77, src)
    original = v.copy()
    fn(v, 0.0, src)
    assert v == original
    fn(v, 1.0, src)
    assert v == ~original


def test_simple_mutation_real_draws(counting):
    simple_mutation(BitVector.zeros(1024), 1 / 1024, counting)
    assert (counting.real_count, counting.int_count, counting.block_count) == (1024, 0, 0)


def test_simple_mutation_mean_distance(src):
    n, pm = 1024, 1 / 1024
    dist, _ = kernels.mutation_flips(
        np.zeros(32, np.uint32), n, pm, BinomialSampler(n, pm), src, 10_000, False
    )
    assert abs(dist.mean() - 1.0) <= 0.1


def test_optimized_mutation_distance_pmf(src):
    n, pm = 256, 1 / 16
    words = BitVector.random(n, src).words
    dist, _ = kernels.mutation_flips(words, n, pm, BinomialSampler(n, pm), src, 10**6, True)
    assert histogram_p_value(dist, exact_binomial_pmf(n, pm)) > ALPHA


@pytest.mark.parametrize("n", [16, 64])
@pytest.mark.parametrize("frac", ["1/n", "1/4", "0.49"])
def test_mutation_equivalence(src, n, frac):
    p = {"1/n": 1 / n, "1/4": 0.25, "0.49": 0.49}[frac]
    trials = 10**5
    sampler = BinomialSampler(n, p)
    words = BitVector.random(n, src).words
    opt_dist, per_bit = kernels.mutation_flips(words, n, p, sampler, src, trials, True)
    sigma = math.sqrt(p * (1 - p) / trials)
    assert np.all(np.abs(per_bit / trials - p) <= 4 * sigma)
    simple_dist, _ = kernels.mutation_flips(words, n, p, sampler, src, trials, False)
    assert homogeneity_p_value(opt_dist, simple_dist) > ALPHA


@pytest.mark.parametrize("fn", UNIFORMS)
def test_uniform_crossover_examples(src, fn):
    a, b = random_pair(50, src)
    v1, v2 = a.copy(), b.copy()
    fn(v1, v2, 0.0, src)
    assert (v1, v2) == (a, b)
    fn(v1, v2, 1.0, src)
    assert (v1, v2) == (b, a)
    v1, v2 = a.copy(), a.copy()
    fn(v1, v2, 0.3, src)
    assert v1 == a and v2 == a


@pytest.mark.parametrize("fn", UNIFORMS)
def test_uniform_crossover_length_mismatch(src, fn):
    with pytest.raises(ValueError):
        fn(BitVector.zeros(8), BitVector.zeros(9), 0.3, src)


def test_uniform_half_uses_blocks(counting):
    v1, v2 = BitVector.zeros(1024), BitVector.ones(1024)
    optimized_uniform_crossover(v1, v2, 0.5, counting)
    assert (counting.block_count, counting.real_count, counting.int_count) == (32, 0, 0)


def test_simple_uniform_real_draws(counting):
    simple_uniform_crossover(BitVector.zeros(64), BitVector.ones(64), 0.3, counting)
    assert counting.real_count == 64


@pytest.mark.parametrize("optimized", [False, True])
def test_uniform_exchange_pmf(src, optimized):
    n, pu = 64, 0.3
    counts = kernels.uniform_exchange_counts(n, pu, BinomialSampler(n, pu), src, 10**6, optimized)
    assert histogram_p_value(counts, exact_binomial_pmf(n, pu)) > ALPHA


def test_mask_twice_restores_parents(src):
    for n in (1, 31, 32, 33, 100):
        a, b = random_pair(n, src)
        mask = BitVector.random(n, src)
        v1, v2 = a.copy(), b.copy()
        apply_crossover_mask(v1, v2, mask)
        for i in range(n):
            expected = (b, a) if mask.get_bit(i) else (a, b)
            assert (v1.get_bit(i), v2.get_bit(i)) == (expected[0].get_bit(i), expected[1].get_bit(i))
        apply_crossover_mask(v1, v2, mask)
        assert (v1, v2) == (a, b)


def cross_with(kind, v1, v2, src):
    if kind == "single":
        single_point_crossover(v1, v2, src)
    elif kind == "two":
        two_point_crossover(v1, v2, src)
    elif kind == "simple":
        simple_uniform_crossover(v1, v2, 0.3, src)
    else:
        optimized_uniform_crossover(v1, v2, 0.3, src)


@given(n=st.integers(2, 128), seed=st.integers(0, 2**32), kind=st.sampled_from(["single", "two", "simple", "optimized"]))
@settings(max_examples=150, deadline=None)
def test_crossover_conserves_bits(n, seed, kind):
    src = RandomSource(seed)
    a, b = random_pair(n, src)
    v1, v2 = a.copy(), b.copy()
    cross_with(kind, v1, v2, src)
    for i in range(n):
        assert sorted((v1.get_bit(i), v2.get_bit(i))) == sorted((a.get_bit(i), b.get_bit(i)))
    assert v1.is_canonical() and v2.is_canonical()


@pytest.mark.parametrize("fn", [single_point_crossover, two_point_crossover])
def test_point_crossover_errors_and_identity(src, fn):
    with pytest.raises(ValueError):
        fn(BitVector.zeros(1), BitVector.zeros(1), src)
    with pytest.raises(ValueError):
        fn(BitVector.zeros(8), BitVector.zeros(9), src)
    a = BitVector.random(40, src)
    v1, v2 = a.copy(), a.copy()
    fn(v1, v2, src)
    assert v1 == a and v2 == a


def test_single_point_n2(counting):
    for _ in range(20):
        v1, v2 = BitVector.from_string("00"), BitVector.from_string("11")
        assert single_point_crossover(v1, v2, counting) == 1
        assert str(v1) == "01" and str(v2) == "10"
    assert counting.int_count == 20 and counting.real_count == 0


def test_single_point_frequencies(src):
    n, trials = 8, 10**6
    per_pos, _ = kernels.point_exchange_frequency(n, src, trials, False)
    freq = per_pos / trials
    assert freq[0] == 0
    assert freq[7] == 1
    for j in range(1, n):
        p = j / (n - 1)
        assert abs(freq[j] - p) <= 4 * math.sqrt(p * (1 - p) / trials) + 1e-12


def test_two_point_n2(counting):
    for _ in range(20):
        v1, v2 = BitVector.from_string("00"), BitVector.from_string("11")
        assert two_point_crossover(v1, v2, counting) == (0, 1)
        assert str(v1) == "11" and str(v2) == "00"
    assert counting.int_count == 40


def test_two_point_segment_lengths(src):
    n, trials = 6, 10**6
    _, lengths = kernels.point_exchange_frequency(n, src, trials, True)
    pairs = list(itertools.combinations(range(n), 2))
    enum = Counter(j - i + 1 for i, j in pairs)
    probs = np.array([enum.get(m, 0) / len(pairs) for m in range(n + 1)])
    assert lengths.min() >= 2
    observed = np.bincount(lengths, minlength=n + 1)[2:]
    from binomial_ga.stats import chi_square_gof

    assert chi_square_gof(observed, probs[2:] * trials).p_value > ALPHA
