import math

import numpy as np
import pytest
import scipy.special
import scipy.stats
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from binomial_ga.rng import RandomSource
from binomial_ga.stats import (
    SampleSummary,
    chi_square_gof,
    chi_square_homogeneity,
    chi_square_sf,
    merge_small_bins,
    regularized_beta,
    regularized_gamma_q,
    student_t_two_tailed,
    summarize,
    welch_t_test,
)
import kernels


def test_summarize_examples():
    assert summarize([5.0]) == SampleSummary(1, 5.0, 0.0)
    assert summarize([1, 2, 3]) == SampleSummary(3, 2.0, 1.0)
    assert summarize([4.5] * 7).variance == 0.0
    with pytest.raises(ValueError):
        summarize([])


def test_summary_validation():
    with pytest.raises(ValueError):
        SampleSummary(0, 1.0, 1.0)
    with pytest.raises(ValueError):
        SampleSummary(3, 1.0, -1.0)


def test_identical_summaries():
    s = SampleSummary(30, 4.2, 0.7)
    r = welch_t_test(s, s)
    assert r.t_statistic == 0 and r.p_value == 1


def test_hand_example():
    r = welch_t_test(SampleSummary(3, 1.0, 1.0), SampleSummary(3, 2.0, 1.0))
    assert r.t_statistic == pytest.approx(-1.224744871, abs=1e-6)
    assert r.dof == pytest.approx(4.0)
    assert r.p_value == pytest.approx(0.2878641, abs=1e-5)


def test_large_gap_reports_near_zero():
    slow = SampleSummary(100, 0.856, 0.01**2)
    fast = SampleSummary(100, 0.00906, 0.0005**2)
    assert welch_t_test(slow, fast).p_value < 1e-100


def test_constant_samples():
    a = SampleSummary(5, 1.0, 0.0)
    assert welch_t_test(a, a).p_value == 1.0
    r = welch_t_test(a, SampleSummary(5, 2.0, 0.0))
    assert r.p_value == 0.0 and r.t_statistic == -math.inf


def test_small_counts_rejected():
    with pytest.raises(ValueError):
        welch_t_test(SampleSummary(1, 0.0, 0.0), SampleSummary(5, 1.0, 1.0))


summaries = st.builds(
    SampleSummary,
    count=st.integers(2, 500),
    mean=st.floats(-1e3, 1e3),
    variance=st.floats(1e-3, 1e3),
)


@given(summaries, summaries)
@settings(max_examples=300, deadline=None)
def test_matches_scipy(a, b):
    ours = welch_t_test(a, b)
    ref = scipy.stats.ttest_ind_from_stats(
        a.mean, math.sqrt(a.variance), a.count, b.mean, math.sqrt(b.variance), b.count, equal_var=False
    )
    assert ours.t_statistic == pytest.approx(ref.statistic, rel=1e-9, abs=1e-12)
    if ref.pvalue > 1e-290:
        assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-7, abs=1e-14)
    else:
        assert ours.p_value < 1e-280


@given(summaries, summaries)
@settings(max_examples=200, deadline=None)
def test_argument_order_symmetry(a, b):
    ab, ba = welch_t_test(a, b), welch_t_test(b, a)
    assert ab.p_value == ba.p_value
    assert ab.t_statistic == -ba.t_statistic
    assert ab.dof > 0 and 0 <= ab.p_value <= 1


@given(summaries, st.floats(0, 50), st.floats(0, 50))
@settings(max_examples=200, deadline=None)
def test_p_decreases_with_gap(a, g1, g2):
    assume(g1 < g2)
    near = welch_t_test(a, SampleSummary(a.count, a.mean + g1, a.variance))
    far = welch_t_test(a, SampleSummary(a.count, a.mean + g2, a.variance))
    assert far.p_value <= near.p_value


@given(st.integers(2, 1000), st.floats(1e-3, 1e3), st.floats(-5, 5))
@settings(max_examples=100, deadline=None)
def test_equal_variance_dof(n, var, gap):
    r = welch_t_test(SampleSummary(n, 0.0, var), SampleSummary(n, gap, var))
    assert r.dof == pytest.approx(2 * (n - 1), rel=1e-12)


@pytest.mark.parametrize("x, a, b", [(0.3, 2.0, 0.5), (0.99, 50.0, 0.5), (0.01, 0.5, 0.5), (0.5, 100.0, 120.0)])
def test_regularized_beta(x, a, b):
    assert regularized_beta(x, a, b) == pytest.approx(scipy.special.betainc(a, b, x), rel=1e-9)


@pytest.mark.parametrize("a, x", [(0.5, 0.1), (0.5, 3.0), (10.0, 2.0), (10.0, 25.0), (250.0, 260.0)])
def test_regularized_gamma_q(a, x):
    assert regularized_gamma_q(a, x) == pytest.approx(scipy.special.gammaincc(a, x), rel=1e-9)


def test_student_t_tail():
    assert student_t_two_tailed(0.0, 7.5) == pytest.approx(1.0)
    assert student_t_two_tailed(2.0, 10) == pytest.approx(2 * scipy.stats.t.sf(2.0, 10), rel=1e-9)
    with pytest.raises(ValueError):
        student_t_two_tailed(1.0, 0)


def test_chi_square_examples():
    r = chi_square_gof([20, 30, 50], [20, 30, 50])
    assert r.statistic == 0 and r.p_value == 1
    r = chi_square_gof([60, 40], [50, 50])
    assert r.statistic == pytest.approx(4.0)
    assert r.dof == 1
    assert r.p_value == pytest.approx(0.0455003, abs=1e-6)
    assert chi_square_sf(30.0, 12) == pytest.approx(scipy.stats.chi2.sf(30.0, 12), rel=1e-9)


def test_chi_square_of_uniform_sampler():
    codes = kernels.ints(RandomSource(8), 10, 10**5)
    counts = np.bincount(codes, minlength=10)
    assert chi_square_gof(counts, np.full(10, 10**4)).p_value > 0.001


@pytest.mark.parametrize(
    "observed, expected",
    [([1, 2, 3], [1, 2]), ([10], [10]), ([5, 5], [4, 6])],
)
def test_chi_square_preconditions(observed, expected):
    with pytest.raises(ValueError):
        chi_square_gof(observed, expected)


def test_homogeneity_matches_scipy():
    a, b = [30, 25, 45, 0], [40, 20, 40, 0]
    ref = scipy.stats.chi2_contingency(np.array([a[:3], b[:3]]), correction=False)
    r = chi_square_homogeneity(a, b)
    assert r.statistic == pytest.approx(ref.statistic)
    assert r.p_value == pytest.approx(ref.pvalue)


def test_merge_small_bins():
    obs, exp = merge_small_bins([1, 2, 10, 3, 1], [2.0, 3.0, 9.0, 2.0, 1.0])
    assert exp.tolist() == [5.0, 12.0]
    assert obs.tolist() == [3.0, 14.0]
    assert exp.min() >= 5
