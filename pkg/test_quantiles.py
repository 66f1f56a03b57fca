#!/usr/bin/env python3
"""
正态分位数与卡方临界点测试
参照值来自 scipy.stats.norm 和基于 erf 的二分法
"""

import math

import numpy as np
import pytest
from scipy.stats import chi2, norm

from propint.errors import DomainError
from propint.quantiles import chi_sq_critical, check_tail_area, normal_quantile


def _bisect_quantile(p: float) -> float:
    """用 erf 表示的正态 CDF 做二分，作为独立参照"""
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 0.5 * math.erfc(-mid / math.sqrt(2.0)) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize(
    "p, expected, tol",
    [
        (0.5, 0.0, 1e-15),
        (0.975, 1.9599640, 1e-6),
        (0.995, 2.5758293, 1e-6),
    ],
)
def test_normal_quantile_examples(p, expected, tol):
    assert normal_quantile(p) == pytest.approx(expected, abs=tol)


def test_normal_quantile_matches_bisection():
    for p in (1e-12, 1e-6, 0.001, 0.02425, 0.025, 0.1, 0.3, 0.5, 0.7, 0.975, 0.999999):
        assert normal_quantile(p) == pytest.approx(_bisect_quantile(p), abs=1e-10)


def test_normal_quantile_matches_scipy_on_random_grid():
    rng = np.random.default_rng(20240101)
    for p in rng.uniform(1e-9, 1 - 1e-9, size=1000):
        assert abs(normal_quantile(float(p)) - norm.ppf(p)) <= 1e-9


def test_normal_quantile_round_trip_through_cdf():
    rng = np.random.default_rng(7)
    for p in rng.uniform(1e-6, 1 - 1e-6, size=1000):
        z = normal_quantile(float(p))
        assert 0.5 * math.erfc(-z / math.sqrt(2.0)) == pytest.approx(p, abs=1e-12)


def test_normal_quantile_is_strictly_increasing():
    grid = np.linspace(1e-6, 1 - 1e-6, 2001)
    values = [normal_quantile(float(p)) for p in grid]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_normal_quantile_antisymmetry_on_dyadic_points():
    # p 与 1-p 都能精确表示
    for k in range(1, 64):
        p = k / 128.0
        assert normal_quantile(1.0 - p) == -normal_quantile(p)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_normal_quantile_rejects_out_of_range(p):
    with pytest.raises(DomainError):
        normal_quantile(p)


@pytest.mark.parametrize(
    "alpha, expected, tol",
    [
        (0.05, 3.841459, 5e-7),
        (1.0, 0.0, 0.0),
        (0.01, 6.634897, 5e-6),
    ],
)
def test_chi_sq_critical_examples(alpha, expected, tol):
    assert chi_sq_critical(alpha).chi_sq == pytest.approx(expected, abs=tol)


def test_chi_sq_critical_matches_scipy():
    for alpha in (0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 0.9):
        cp = chi_sq_critical(alpha)
        assert cp.chi_sq == pytest.approx(chi2.isf(alpha, 1), rel=1e-10)
        assert cp.chi == pytest.approx(math.sqrt(cp.chi_sq), rel=1e-15)


def test_chi_sq_critical_limits():
    assert math.isinf(chi_sq_critical(0.0).chi_sq)
    assert math.isinf(chi_sq_critical(0.0).chi)
    assert chi_sq_critical(1.0).chi == 0.0


def test_chi_sq_critical_decreases_in_alpha():
    values = [chi_sq_critical(a).chi_sq for a in np.linspace(0.001, 0.999, 500)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("alpha", [-0.01, 1.01, float("nan")])
def test_check_tail_area_rejects(alpha):
    with pytest.raises(DomainError):
        check_tail_area(alpha)
