import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from binomial_ga.rng import CountingRandomSource, RandomSource  # noqa: E402
from binomial_ga.stats import chi_square_gof, merge_small_bins  # noqa: E402

ALPHA = 0.001


def exact_binomial_pmf(n, p):
    return np.array([math.comb(n, k) * p**k * (1 - p) ** (n - k) for k in range(n + 1)])


def histogram_p_value(values, probabilities):
    """Chi-square p of integer samples against a PMF over 0..len-1, small bins merged."""
    observed = np.bincount(values, minlength=len(probabilities)).astype(float)
    assert len(observed) == len(probabilities), "sample outside the PMF support"
    expected = np.asarray(probabilities) * len(values)
    obs, exp = merge_small_bins(observed, expected)
    return chi_square_gof(obs, exp).p_value


def uniform_p_value(codes, categories):
    """Chi-square p of categorical codes against the uniform distribution."""
    _, counts = np.unique(codes, return_counts=True)
    assert len(counts) == categories
    expected = np.full(categories, len(codes) / categories)
    return chi_square_gof(counts, expected).p_value


@pytest.fixture
def src():
    return RandomSource(20240601)


@pytest.fixture
def counting(src):
    return CountingRandomSource(src)


def homogeneity_p_value(values_a, values_b, min_count=10):
    """Two-sample chi-square p of integer samples, adjacent sparse bins merged."""
    from binomial_ga.stats import chi_square_homogeneity

    size = max(values_a.max(), values_b.max()) + 1
    a = np.bincount(values_a, minlength=size)
    b = np.bincount(values_b, minlength=size)
    ma, mb = [], []
    acc_a = acc_b = 0
    for x, y in zip(a, b):
        acc_a += x
        acc_b += y
        if acc_a + acc_b >= min_count:
            ma.append(acc_a)
            mb.append(acc_b)
            acc_a = acc_b = 0
    if ma:
        ma[-1] += acc_a
        mb[-1] += acc_b
    return chi_square_homogeneity(ma, mb).p_value


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance verdict line; shown again in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(criterion, ok, detail, tag=None):
        tag = tag or ("PASS" if ok else "FAIL")
        line = f"{tag:4}  criterion {criterion}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
