#!/usr/bin/env python3
"""
Wilson 置信区间
包括无限总体的标准区间、有限总体比例区间和未抽样部分比例区间，
以及有效样本量和单参数（φ）形式的交叉校验路径
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .errors import DomainError
from .quantiles import check_tail_area, chi_sq_critical

# 无限总体
INFINITE = math.inf

# 端点越界容差，超过即视为计算错误
RANGE_TOLERANCE = 1e-12


class Target(str, Enum):
    """推断目标"""

    SUPERPOPULATION = "superpop"
    POPULATION = "population"
    UNSAMPLED = "unsampled"


@dataclass(frozen=True)
class SampleSummary:
    """
    样本概要

    n 允许取非负实数（便于做有限差分检查），命令行层只接受整数。
    label 为数据来源名称，仅用于文本输出。
    """

    n: float
    x_bar: float
    successes: Optional[int] = None
    label: Optional[str] = None

    def __post_init__(self):
        if math.isnan(self.n) or self.n < 0:
            raise DomainError(f"样本量必须为非负数: {self.n}")
        if math.isnan(self.x_bar) or self.x_bar < 0.0 or self.x_bar > 1.0:
            raise DomainError(f"样本比例必须在 [0, 1] 之间: {self.x_bar}")
        if self.successes is not None:
            if self.successes < 0 or self.successes > self.n:
                raise DomainError(f"成功数必须在 0 到 n 之间: successes={self.successes}, n={self.n}")
            if abs(self.x_bar * self.n - self.successes) > 1e-12 * max(1.0, self.n):
                raise DomainError("样本比例与成功数不一致")

    @classmethod
    def from_counts(cls, n: int, successes: int, label: Optional[str] = None) -> "SampleSummary":
        """由样本量和成功数构造"""
        if n < 1:
            raise DomainError(f"按计数输入时样本量至少为1: {n}")
        if successes < 0 or successes > n:
            raise DomainError(f"成功数必须在 0 到 n 之间: successes={successes}, n={n}")
        return cls(n=float(n), x_bar=successes / n, successes=successes, label=label)


@dataclass(frozen=True)
class Interval:
    """闭区间 [lower, upper] ⊆ [0, 1]"""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def check_population(n: float, N: float) -> None:
    """校验总体规模 N >= 1 且 0 <= n <= N"""
    if math.isnan(N) or N < 1:
        raise DomainError(f"总体规模必须 >= 1: {N}")
    if math.isnan(n) or n < 0:
        raise DomainError(f"样本量必须为非负数: {n}")
    if n > N:
        raise DomainError(f"样本量不能超过总体规模: n={n}, N={N}")
    if N == 1 and 0 < n < 1:
        raise DomainError("单元素总体只允许 n = 0 或 n = 1")


def effective_n_star(n: float, N: float) -> float:
    """
    总体比例推断的有效样本量 n_* = n(N-1)/(N-n)

    Args:
        n: 样本量
        N: 总体规模（INFINITE 表示无限总体）

    Returns:
        float: n_*，普查（n = N）时为 +inf，无限总体时等于 n
    """
    check_population(n, N)
    if math.isinf(N):
        return float(n)
    if n == N:
        return math.inf
    return n * (N - 1) / (N - n)


def effective_n_double_star(n: float, N: float) -> float:
    """
    未抽样部分比例推断的有效样本量 n_** = n(N-n)/(N-1)

    Returns:
        float: n_**，普查或 n = 0 时为 0，无限总体时等于 n
    """
    check_population(n, N)
    if math.isinf(N):
        return float(n)
    if n == N or n == 0:
        return 0.0
    return n * (N - n) / (N - 1)


def effective_sample_size(target: Target, n: float, N: float) -> float:
    """按推断目标选择有效样本量"""
    check_population(n, N)
    target = Target(target)
    if target is Target.POPULATION:
        return effective_n_star(n, N)
    if target is Target.UNSAMPLED:
        return effective_n_double_star(n, N)
    return float(n)


def _check_core_inputs(alpha: float, n_eff: float, x_bar: float) -> float:
    alpha = check_tail_area(alpha)
    if math.isnan(n_eff) or n_eff < 0:
        raise DomainError(f"有效样本量必须为非负数: {n_eff}")
    if math.isnan(x_bar) or x_bar < 0.0 or x_bar > 1.0:
        raise DomainError(f"样本比例必须在 [0, 1] 之间: {x_bar}")
    return alpha


def wilson_core(alpha: float, n_eff: float, x_bar: float) -> Interval:
    """
    标准 Wilson 区间 CI_∞(α, n, x̄)

    中心 (n x̄ + χ²/2)/(n + χ²)，半宽 (χ/(n + χ²))·√(n x̄(1-x̄) + χ²/4)。
    退化情形直接返回极限值：有效样本量的极限优先于 alpha 的极限，
    即 n_eff = +inf 时为 [x̄, x̄]，n_eff = 0 时为 [0, 1]，
    其次 alpha = 1 时为 [x̄, x̄]，alpha = 0 时为 [0, 1]。

    Args:
        alpha: 显著性水平（上尾面积）
        n_eff: 有效样本量，可为 +inf
        x_bar: 样本比例

    Returns:
        Interval: 置信区间
    """
    alpha = _check_core_inputs(alpha, n_eff, x_bar)

    if math.isinf(n_eff):
        return Interval(x_bar, x_bar)
    if n_eff == 0:
        return Interval(0.0, 1.0)
    if alpha == 1.0:
        return Interval(x_bar, x_bar)
    if alpha == 0.0:
        return Interval(0.0, 1.0)

    cp = chi_sq_critical(alpha)
    denom = n_eff + cp.chi_sq
    center = (n_eff * x_bar + 0.5 * cp.chi_sq) / denom
    half_width = (cp.chi / denom) * math.sqrt(n_eff * x_bar * (1.0 - x_bar) + 0.25 * cp.chi_sq)
    return _checked_interval(center - half_width, center + half_width)


def _checked_interval(lower: float, upper: float) -> Interval:
    # 端点在数学上必然落在 [0, 1] 内，只吸收舍入误差
    if lower < -RANGE_TOLERANCE or upper > 1.0 + RANGE_TOLERANCE or lower > upper:
        raise AssertionError(f"区间端点越界: [{lower}, {upper}]")
    return Interval(min(max(lower, 0.0), 1.0), min(max(upper, 0.0), 1.0))


def bound_functions(alpha: float, n_eff: float, x_bar: float) -> Tuple[float, float, float]:
    """
    下界、上界与宽度函数 (L, U, w)，w = U - L

    Returns:
        Tuple[float, float, float]: (L, U, w)
    """
    interval = wilson_core(alpha, n_eff, x_bar)
    return interval.lower, interval.upper, interval.width


def confidence_interval(target: Target, alpha: float, sample: SampleSummary, N: float = INFINITE) -> Interval:
    """
    按推断目标计算置信区间

    - SUPERPOPULATION: CI_∞(α, n, x̄)
    - POPULATION: CI_N(α, n, x̄) = CI_∞(α, n_*, x̄)，普查时退化为 [x̄, x̄]
    - UNSAMPLED: CI_{n:N}(α, n, x̄) = CI_∞(α, n_**, x̄)，普查时为 [0, 1]

    N 为 INFINITE 时三种目标给出相同区间。

    Args:
        target: 推断目标
        alpha: 显著性水平
        sample: 样本概要
        N: 总体规模

    Returns:
        Interval: 置信区间
    """
    n_eff = effective_sample_size(target, sample.n, N)
    return wilson_core(alpha, n_eff, sample.x_bar)


def width(target: Target, alpha: float, sample: SampleSummary, N: float = INFINITE) -> float:
    """宽度函数 w_∞、w_N 或 w_{n:N}"""
    return confidence_interval(target, alpha, sample, N).width


def _check_phi_inputs(alpha: float, n: float, N: float) -> float:
    alpha = check_tail_area(alpha)
    if alpha == 0.0:
        raise DomainError("alpha = 0 时 φ 参数无定义，请使用主路径")
    if math.isinf(N):
        raise DomainError("φ 参数只对有限总体定义")
    check_population(n, N)
    if n == 0 or n == N:
        raise DomainError(f"φ 参数要求 0 < n < N: n={n}, N={N}")
    return alpha


def phi_star(alpha: float, n: float, N: float) -> float:
    """
    φ_* = χ²/(2n_*) = ((N-n)/(N-1))·(χ²/2n)

    与 n_* 保持一致，单参数形式的区间因此与主路径相同。
    """
    alpha = _check_phi_inputs(alpha, n, N)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return ((N - n) / (N - 1)) * (chi_sq / (2.0 * n))


def phi_double_star(alpha: float, n: float, N: float) -> float:
    """φ_** = χ²/(2n_**) = ((N-1)/(N-n))·(χ²/2n)"""
    alpha = _check_phi_inputs(alpha, n, N)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return ((N - 1) / (N - n)) * (chi_sq / (2.0 * n))


def phi_star_uncorrected(alpha: float, n: float, N: float) -> float:
    """
    φ_* 的另一种写法 ((N-n)/N)·(χ²/2n)

    用 N 代替了 N-1，与 n_* = n(N-1)/(N-n) 不一致，
    只用于记录差异，区间计算不使用。
    """
    alpha = _check_phi_inputs(alpha, n, N)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return ((N - n) / N) * (chi_sq / (2.0 * n))


def phi_double_star_uncorrected(alpha: float, n: float, N: float) -> float:
    """φ_** 的另一种写法 (N/(N-n))·(χ²/2n)，同样只用于记录差异"""
    alpha = _check_phi_inputs(alpha, n, N)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return (N / (N - n)) * (chi_sq / (2.0 * n))


def phi_interval(phi: float, x_bar: float) -> Interval:
    """
    给定 φ 的区间：中心 (x̄ + φ)/(1 + 2φ)，半宽 √(2φ x̄(1-x̄) + φ²)/(1 + 2φ)
    """
    if math.isnan(phi) or phi < 0 or math.isinf(phi):
        raise DomainError(f"φ 必须为有限非负数: {phi}")
    if math.isnan(x_bar) or x_bar < 0.0 or x_bar > 1.0:
        raise DomainError(f"样本比例必须在 [0, 1] 之间: {x_bar}")
    denom = 1.0 + 2.0 * phi
    center = (x_bar + phi) / denom
    half_width = math.sqrt(2.0 * phi * x_bar * (1.0 - x_bar) + phi * phi) / denom
    return _checked_interval(center - half_width, center + half_width)


def phi_form_interval(target: Target, alpha: float, sample: SampleSummary, N: float) -> Interval:
    """
    单参数形式的区间，作为主路径的交叉校验

    Args:
        target: POPULATION 或 UNSAMPLED
        alpha: 显著性水平
        sample: 样本概要，要求 0 < n < N
        N: 有限总体规模

    Returns:
        Interval: 与 confidence_interval 相同的区间（误差 1e-12 内）
    """
    target = Target(target)
    if target is Target.POPULATION:
        phi = phi_star(alpha, sample.n, N)
    elif target is Target.UNSAMPLED:
        phi = phi_double_star(alpha, sample.n, N)
    else:
        raise DomainError("φ 形式只适用于 population 和 unsampled 目标")
    return phi_interval(phi, sample.x_bar)


def describe_target(target: Target, N: float, n: float) -> str:
    """文本输出用的推断目标描述"""
    target = Target(target)
    if math.isinf(N):
        return "proportion parameter for infinite population"
    if target is Target.SUPERPOPULATION:
        return "proportion parameter for superpopulation"
    if target is Target.POPULATION:
        return f"proportion for population of size {_format_size(N)}"
    return f"proportion for unsampled population of size {_format_size(N - n)}"


def _format_size(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else f"{value:g}"
