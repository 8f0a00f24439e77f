import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import kernels
from conftest import ALPHA, uniform_p_value
from binomial_ga.rng import CountingRandomSource, RandomSource, from_seed, shuffle


def test_same_seed_same_reals():
    a, b = RandomSource(42), RandomSource(42)
    first = [a.next_real(), a.next_real()]
    assert first == [b.next_real(), b.next_real()]
    assert all(0.0 <= x < 1.0 for x in first)


def test_real_mean_and_range(src):
    x = kernels.reals(src, 10**6)
    assert x.min() >= 0.0 and x.max() < 1.0
    assert abs(x.mean() - 0.5) < 0.002


def test_full_64_bit_seed_range():
    s = from_seed(2**64 - 1)
    assert s.seed == 2**64 - 1
    assert 0.0 <= s.next_real() < 1.0
    with pytest.raises(ValueError):
        from_seed(-1)
    with pytest.raises(ValueError):
        from_seed(2**64)


def test_distinct_seeds_give_distinct_streams():
    assert kernels.reals(RandomSource(1), 10).tolist() != kernels.reals(RandomSource(2), 10).tolist()


def test_int_bound_one_is_always_zero(src):
    assert set(kernels.ints(src, 1, 1000)) == {0}


def test_int_bound_seven_in_range(src):
    x = kernels.ints(src, 7, 10**5)
    assert x.min() == 0 and x.max() == 6


def test_int_faces_uniform(src):
    x = kernels.ints(src, 6, 6 * 10**5)
    counts = np.bincount(x, minlength=6)
    assert np.all(np.abs(counts - 10**5) <= 1500)
    assert uniform_p_value(x, 6) > ALPHA


@pytest.mark.parametrize("bound", [0, -1, 2**32 + 1])
def test_int_rejects_bad_bound(src, bound):
    with pytest.raises(ValueError):
        src.next_int(bound)


def test_int_accepts_largest_bound(src):
    assert 0 <= src.next_int(2**32) < 2**32


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=2**20), st.integers(min_value=0, max_value=2**32))
def test_int_always_below_bound(bound, seed):
    x = kernels.ints(RandomSource(seed), bound, 10**4)
    assert x.min() >= 0 and x.max() < bound


def test_small_bound_consumes_one_word_per_draw():
    # no rejections: each draw is exactly the top 32 bits of one raw word times 6
    a, b = RandomSource(7), RandomSource(7)
    for _ in range(1000):
        expected = ((b.next_u64() >> 32) * 6) >> 32
        assert a.next_int(6) == expected


def test_large_bound_rejects_about_half():
    # bound just above 2**31 rejects nearly half of all words
    a, twin = RandomSource(11), RandomSource(11)
    draws = 2000
    kernels.ints(a, 2**31 + 1, draws)
    words = 0
    while (twin.s0, twin.s1, twin.s2, twin.s3) != (a.s0, a.s1, a.s2, a.s3):
        twin.next_u64()
        words += 1
    assert 1.8 < words / draws < 2.2


def test_block_popcount_mean(src):
    b = kernels.blocks(src, 10**5)
    assert abs(np.bitwise_count(b).mean() - 16.0) < 0.1


def test_block_reproducible_and_distinct():
    a = kernels.blocks(RandomSource(5), 100)
    assert np.array_equal(a, kernels.blocks(RandomSource(5), 100))
    assert np.any(a ^ kernels.blocks(RandomSource(6), 100))


def test_shuffle_degenerate(src):
    assert shuffle(src, []) == []
    assert shuffle(src, ["x"]) == ["x"]
    empty = np.array([], dtype=np.int64)
    assert shuffle(src, empty).size == 0


def test_shuffle_python_list_is_permutation(src):
    items = list("abcdefg")
    shuffle(src, items)
    assert sorted(items) == list("abcdefg")


def test_shuffle_uniform_over_permutations(src):
    codes = kernels.permutation_codes(src, 3, 6 * 10**5)
    _, counts = np.unique(codes, return_counts=True)
    assert len(counts) == 6
    assert np.all(np.abs(counts - 10**5) <= 1500)
    assert uniform_p_value(codes, 6) > ALPHA


def test_counting_counts_exactly(src):
    c = CountingRandomSource(src)
    kernels.reals(c, 137)
    kernels.ints(c, 10, 5)
    kernels.blocks(c, 3)
    assert (c.real_count, c.int_count, c.block_count) == (137, 5, 3)
    assert c.total() == 145
    c.reset()
    assert c.total() == 0


def test_counting_is_transparent():
    plain = RandomSource(99)
    counted = CountingRandomSource(RandomSource(99))
    for _ in range(50):
        assert plain.next_real() == counted.next_real()
        assert plain.next_int(1000) == counted.next_int(1000)
        assert plain.next_block32() == counted.next_block32()


def test_interleaved_draw_kinds_reproducible():
    def run(s):
        return [(s.next_real(), s.next_int(17), s.next_block32()) for _ in range(20)]

    assert run(RandomSource(3)) == run(RandomSource(3))
