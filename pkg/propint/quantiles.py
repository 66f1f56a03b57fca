#!/usr/bin/env python3
"""
标准正态分位数与一自由度卡方临界点
所有区间公式都从这里取 χ_α 与 χ²_α
"""

import math
from dataclasses import dataclass

from .errors import DomainError

# 有理逼近系数（中心区）
_A = (
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
)
_B = (
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
)
# 有理逼近系数（尾部区）
_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
)
_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
)

# 中心区与尾部区的分界点
_P_LOW = 0.02425

_SQRT_2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class CriticalPoint:
    """卡方临界点 χ²_α 及其平方根 χ_α（alpha=0 时两者均为 +inf）"""

    chi_sq: float
    chi: float


def check_tail_area(alpha: float) -> float:
    """
    校验尾部面积 alpha ∈ [0, 1]

    Returns:
        float: 转为浮点数的 alpha
    """
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0.0 or alpha > 1.0:
        raise DomainError(f"alpha 必须在 [0, 1] 之间: {alpha}")
    return alpha


def _lower_half_quantile(p: float) -> float:
    """0 < p <= 0.5 时的分位数，有理逼近后做一步 Halley 修正"""
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        )
    else:
        q = p - 0.5
        r = q * q
        x = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / (
            ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        )

    # x <= 0，用 erfc 计算左尾概率不会有抵消误差
    e = 0.5 * math.erfc(-x / _SQRT_2) - p
    u = e * _SQRT_2PI * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def normal_quantile(p: float) -> float:
    """
    标准正态分布的分位数 Φ⁻¹(p)

    只在左半边计算，右半边取相反数，因此 normal_quantile(1-p) = -normal_quantile(p)

    Args:
        p: 概率，0 < p < 1

    Returns:
        float: 满足 Φ(z) = p 的 z（绝对误差不超过 1e-10）
    """
    p = float(p)
    if math.isnan(p) or p <= 0.0 or p >= 1.0:
        raise DomainError(f"分位数的概率必须在 (0, 1) 之间: {p}")
    if p <= 0.5:
        return _lower_half_quantile(p)
    return -_lower_half_quantile(1.0 - p)


def chi_sq_critical(alpha: float) -> CriticalPoint:
    """
    一自由度卡方分布上尾面积为 alpha 的临界点

    Args:
        alpha: 尾部面积，0 <= alpha <= 1

    Returns:
        CriticalPoint: alpha=1 时为 0，alpha=0 时为 +inf
    """
    alpha = check_tail_area(alpha)
    if alpha == 0.0:
        return CriticalPoint(chi_sq=math.inf, chi=math.inf)
    if alpha == 1.0:
        return CriticalPoint(chi_sq=0.0, chi=0.0)

    # χ_α = Φ⁻¹(1 - α/2) = -Φ⁻¹(α/2)
    chi = -normal_quantile(0.5 * alpha)
    return CriticalPoint(chi_sq=chi * chi, chi=chi)
