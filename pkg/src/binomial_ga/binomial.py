"""Binomial variates B(n, p) in constant expected time.

Two regimes, split on ``n * min(p, 1 - p)``:

* below :data:`BTPE_THRESHOLD` a sequential CDF search from k = 0
  (one uniform per variate, O(n p) < 10 expected steps);
* at or above it, Kachitvichyanukul and Schmeiser's BTPE
  triangle/parallelogram/exponential-tails rejection sampler with its
  squeeze and Stirling-bounded final test.

Both regimes work on ``r = min(p, 1 - p)`` and reflect the result when
``p > 0.5``.
"""

from __future__ import annotations

import math

import numpy as np
from numba import boolean, float64, int64, njit
from numba.experimental import jitclass

__all__ = [
    "BinomialSampler",
    "sample_binomial", "BTPE_THRESHOLD", "INVERSION", "BTPE", "binomial_pmf"]

BTPE_THRESHOLD = 10.0

INVERSION = 0
BTPE = 1
DEGENERATE = 2


@njit(inline="always")
def _stirling_tail(x):
    # 1/(12x) - 1/(360x^3) + 1/(1260x^5) - 1/(1680x^7) + ...
    x2 = x * x
    return (13860.0 - (462.0 - (132.0 - (99.0 - 140.0 / x2) / x2) / x2) / x2) / x / 166320.0


@jitclass(
    [
        ("n", int64),
        ("p", float64),
        ("regime", int64),
        ("flip", boolean),
        ("r", float64),
        ("q", float64),
        ("nrq", float64),
        # inversion
        ("q_pow_n", float64),
        ("odds", float64),
        ("odds_n1", float64),
        ("bound", int64),
        # btpe
        ("m", int64),
        ("fm", float64),
        ("p1", float64),
        ("p2", float64),
        ("p3", float64),
        ("p4", float64),
        ("xm", float64),
        ("xl", float64),
        ("xr", float64),
        ("c", float64),
        ("laml", float64),
        ("lamr", float64),
    ]
)
class BinomialSampler:
    """Precomputed sampler for one (n, p) pair.

    ``regime`` is one of INVERSION, BTPE or DEGENERATE (n == 0 or p in {0, 1}).
    """

    def __init__(self, n, p):
        if n < 0:
            raise ValueError("n must be non-negative")
        if not (p >= 0.0 and p <= 1.0):
            raise ValueError("p must lie in [0, 1]")
        self.n = n
        self.p = p
        self.flip = p > 0.5
        r = 1.0 - p if self.flip else p
        q = 1.0 - r
        self.r = r
        self.q = q
        self.nrq = n * r * q
        self.q_pow_n = 0.0
        self.odds = 0.0
        self.odds_n1 = 0.0
        self.bound = 0
        self.m = 0
        self.fm = 0.0
        self.p1 = 0.0
        self.p2 = 0.0
        self.p3 = 0.0
        self.p4 = 0.0
        self.xm = 0.0
        self.xl = 0.0
        self.xr = 0.0
        self.c = 0.0
        self.laml = 0.0
        self.lamr = 0.0
        if n == 0 or r == 0.0:
            self.regime = DEGENERATE
        elif n * r < BTPE_THRESHOLD:
            self.regime = INVERSION
            self.q_pow_n = math.exp(n * math.log1p(-r))
            self.odds = r / q
            self.odds_n1 = (n + 1) * self.odds
            # restart beyond ~10 sigma; the truncated mass is far below 1e-20
            self.bound = min(n, int(n * r + 10.0 * math.sqrt(self.nrq + 1.0)))
        else:
            self.regime = BTPE
            fm = n * r + r
            m = int(math.floor(fm))
            p1 = math.floor(2.195 * math.sqrt(self.nrq) - 4.6 * q) + 0.5
            xm = m + 0.5
            xl = xm - p1
            xr = xm + p1
            c = 0.134 + 20.5 / (15.3 + m)
            a = (fm - xl) / (fm - xl * r)
            laml = a * (1.0 + a / 2.0)
            a = (xr - fm) / (xr * q)
            lamr = a * (1.0 + a / 2.0)
            p2 = p1 * (1.0 + 2.0 * c)
            p3 = p2 + c / laml
            self.fm = fm
            self.m = m
            self.p1 = p1
            self.xm = xm
            self.xl = xl
            self.xr = xr
            self.c = c
            self.laml = laml
            self.lamr = lamr
            self.p2 = p2
            self.p3 = p3
            self.p4 = p3 + c / lamr

    def sample(self, src):
        """One variate k in [0, n]; kernels should call sample_binomial directly."""
        return sample_binomial(self, src)


@njit(inline="always")
def sample_binomial(sampler, src):
    """Draw k ~ B(sampler.n, sampler.p) using uniforms from ``src``."""
    if sampler.regime == DEGENERATE:
        k = 0
    elif sampler.regime == INVERSION:
        k = _inversion(sampler, src)
    else:
        k = _btpe(sampler, src)
    if sampler.flip:
        return sampler.n - k
    return k


@njit(inline="always")
def _inversion(s, src):
    while True:
        u = src.next_real()
        prob = s.q_pow_n
        k = 0
        while u > prob:
            u -= prob
            k += 1
            if k > s.bound:
                break
            prob *= s.odds_n1 / k - s.odds
        if k <= s.bound:
            return k


@njit
def _btpe(s, src):
    n = s.n
    r = s.r
    q = s.q
    m = s.m
    p1 = s.p1
    c = s.c
    xm = s.xm
    while True:
        u = src.next_real() * s.p4
        v = src.next_real()
        if u <= p1:
            # triangle: accept immediately
            return int64(math.floor(xm - p1 * v + u))
        if u <= s.p2:
            x = s.xl + (u - p1) / c
            v = v * c + 1.0 - abs(m - x + 0.5) / p1
            if v > 1.0:
                continue
            y = int64(math.floor(x))
        elif u <= s.p3:
            if v == 0.0:
                continue
            y = int64(math.floor(s.xl + math.log(v) / s.laml))
            if y < 0:
                continue
            v = v * (u - s.p2) * s.laml
        else:
            if v == 0.0:
                continue
            y = int64(math.floor(s.xr - math.log(v) / s.lamr))
            if y > n:
                continue
            v = v * (u - s.p3) * s.lamr

        k = abs(y - m)
        if k <= 20 or k >= s.nrq / 2.0 - 1.0:
            # explicit recursive evaluation of f(y) / f(m)
            odds = r / q
            a = odds * (n + 1)
            f = 1.0
            if m < y:
                for i in range(m + 1, y + 1):
                    f *= a / i - odds
            elif m > y:
                for i in range(y + 1, m + 1):
                    f /= a / i - odds
            if v <= f:
                return y
            continue

        # squeeze on log f(y) / f(m)
        nrq = s.nrq
        rho = (k / nrq) * ((k * (k / 3.0 + 0.625) + 1.0 / 6.0) / nrq + 0.5)
        t = -k * k / (2.0 * nrq)
        alv = math.log(v)
        if alv < t - rho:
            return y
        if alv > t + rho:
            continue

        x1 = y + 1.0
        f1 = m + 1.0
        z = n + 1.0 - m
        w = n - y + 1.0
        bound = (
            xm * math.log(f1 / x1)
            + (n - m + 0.5) * math.log(z / w)
            + (y - m) * math.log(w * r / (x1 * q))
            + _stirling_tail(f1)
            + _stirling_tail(z)
            - _stirling_tail(x1)
            - _stirling_tail(w)
        )
        if alv <= bound:
            return y


def binomial_pmf(n: int, p: float) -> np.ndarray:
    """Exact B(n, p) probabilities for k = 0..n by direct evaluation."""
    return np.array(
        [math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(n + 1)],
        dtype=float,
    )
