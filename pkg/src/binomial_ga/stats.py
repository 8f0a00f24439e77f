"""Welch's t-test, chi-square tests and the special functions behind them.

The incomplete beta and gamma functions are evaluated by continued
fractions (modified Lentz) or series to a relative tolerance of 1e-10.
P-values below 1e-300 are reported as exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "SampleSummary",
    "TTestResult",
    "ChiSquareResult",
    "summarize",
    "welch_t_test",
    "chi_square_gof",
    "chi_square_homogeneity",
    "merge_small_bins",
    "regularized_beta",
    "regularized_gamma_q",
    "student_t_two_tailed",
    "chi_square_sf",
]

EPS = 1e-10
TINY = 1e-300
MAX_ITER = 10_000
P_FLOOR = 1e-300


@dataclass(frozen=True)
class SampleSummary:
    count: int
    mean: float
    variance: float

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}")
        if self.variance < 0:
            raise ValueError(f"variance must be non-negative, got {self.variance}")


class TTestResult(NamedTuple):
    t_statistic: float
    dof: float
    p_value: float


class ChiSquareResult(NamedTuple):
    statistic: float
    dof: int
    p_value: float


def summarize(values: Sequence[float]) -> SampleSummary:
    """Mean and unbiased variance (0 for a single value)."""
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("cannot summarize an empty sample")
    mean = float(x.mean())
    var = float(x.var(ddof=1)) if x.size > 1 else 0.0
    return SampleSummary(int(x.size), mean, var)


def _floor_p(p: float) -> float:
    if p < P_FLOOR:
        return 0.0
    return min(p, 1.0)


def _beta_cf(a: float, b: float, x: float) -> float:
    # continued fraction for I_x(a, b), modified Lentz
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < TINY:
        d = TINY
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    # the fraction converges fast only on this side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _beta_cf(b, a, 1.0 - x) / b


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x)."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        return 1.0
    log_front = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1.0:
        # series for P(a, x)
        ap = a
        total = term = 1.0 / a
        for _ in range(MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * EPS:
                return 1.0 - total * math.exp(log_front)
        raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")
    b = x + 1.0 - a
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return math.exp(log_front) * h
    raise ArithmeticError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def student_t_two_tailed(t: float, dof: float) -> float:
    """P(|T| >= |t|) for Student's t with ``dof`` degrees of freedom."""
    if dof <= 0:
        raise ValueError("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return _floor_p(regularized_beta(dof / (dof + t * t), dof / 2.0, 0.5))


def chi_square_sf(statistic: float, dof: int) -> float:
    return _floor_p(regularized_gamma_q(dof / 2.0, statistic / 2.0))


def welch_t_test(a: SampleSummary, b: SampleSummary) -> TTestResult:
    """Two-tailed Welch's unequal-variances t-test on two summaries."""
    if a.count < 2 or b.count < 2:
        raise ValueError("Welch's t-test needs at least 2 observations per sample")
    va = a.variance / a.count
    vb = b.variance / b.count
    se2 = va + vb
    diff = a.mean - b.mean
    if se2 == 0.0:
        # both samples constant
        if diff == 0.0:
            return TTestResult(0.0, float(a.count + b.count - 2), 1.0)
        return TTestResult(math.copysign(math.inf, diff), float(a.count + b.count - 2), 0.0)
    t = diff / math.sqrt(se2)
    dof = se2 * se2 / (va * va / (a.count - 1) + vb * vb / (b.count - 1))
    return TTestResult(t, dof, student_t_two_tailed(t, dof))


def _as_counts(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def chi_square_gof(observed, expected) -> ChiSquareResult:
    """Pearson goodness of fit with bins - 1 degrees of freedom.

    ``expected`` holds expected counts; every bin must expect at least 5
    (see :func:`merge_small_bins`).
    """
    obs = _as_counts(observed)
    exp = _as_counts(expected)
    if obs.shape != exp.shape or obs.ndim != 1 or obs.size < 2:
        raise ValueError("observed and expected must be equal-length 1-d arrays with >= 2 bins")
    if np.any(exp < 5):
        raise ValueError("every expected count must be at least 5; merge small bins first")
    stat = float(np.sum((obs - exp) ** 2 / exp))
    dof = obs.size - 1
    return ChiSquareResult(stat, dof, chi_square_sf(stat, dof))


def chi_square_homogeneity(counts_a, counts_b) -> ChiSquareResult:
    """Two-sample chi-square test that two histograms share one distribution.

    Bins where both samples are empty are dropped.
    """
    a = _as_counts(counts_a)
    b = _as_counts(counts_b)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("histograms must be equal-length 1-d arrays")
    keep = (a + b) > 0
    a, b = a[keep], b[keep]
    if a.size < 2:
        raise ValueError("need at least 2 non-empty bins")
    na, nb = a.sum(), b.sum()
    col = a + b
    ea = col * na / (na + nb)
    eb = col * nb / (na + nb)
    stat = float(np.sum((a - ea) ** 2 / ea) + np.sum((b - eb) ** 2 / eb))
    dof = a.size - 1
    return ChiSquareResult(stat, dof, chi_square_sf(stat, dof))


def merge_small_bins(observed, expected, min_expected: float = 5.0):
    """Merge adjacent bins left to right until each expects >= ``min_expected``.

    Leftover small mass at the right end is folded into the last bin.
    Returns new (observed, expected) arrays.
    """
    obs_out: list[float] = []
    exp_out: list[float] = []
    acc_o = acc_e = 0.0
    for o, e in zip(_as_counts(observed), _as_counts(expected)):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp_out:
            obs_out[-1] += acc_o
            exp_out[-1] += acc_e
        else:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
    return np.array(obs_out), np.array(exp_out)
