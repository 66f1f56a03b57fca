#!/usr/bin/env python3
"""
样本量规划
目标宽度对应的所需样本量、保守样本量、等产量线（isoquant）
以及未抽样部分推断的精度下限
"""

import math
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from scipy.optimize import brentq

from .errors import DomainError
from .intervals import (
    INFINITE,
    SampleSummary,
    Target,
    check_population,
    effective_n_double_star,
    width,
)
from .quantiles import check_tail_area, chi_sq_critical

logger = logging.getLogger(__name__)

# 等产量线的两种推断目标
ISOQUANT_KINDS = ("population", "unsampled")


@dataclass(frozen=True)
class PlanQuery:
    """
    样本量规划查询

    x_bar_assumed 为 None 表示保守规划（对所有样本比例都成立）
    """

    width_target: float
    alpha: float
    x_bar_assumed: Optional[float] = None

    def __post_init__(self):
        _check_width_and_alpha(self.width_target, self.alpha)
        if self.x_bar_assumed is not None:
            _check_proportion(self.x_bar_assumed)


@dataclass(frozen=True)
class IsoquantQuery:
    """等产量线查询：未抽样部分规模 m 与目标有效样本量"""

    m: float
    n_star_target: float

    def __post_init__(self):
        _check_isoquant_inputs(self.m, self.n_star_target)


def _check_width_and_alpha(w: float, alpha: float) -> None:
    if math.isnan(w) or w <= 0.0 or w >= 1.0:
        raise DomainError(f"目标宽度必须在 (0, 1) 之间: {w}")
    alpha = check_tail_area(alpha)
    if alpha == 0.0 or alpha == 1.0:
        raise DomainError(f"规划要求 0 < alpha < 1: {alpha}")


def _check_proportion(x_bar: float) -> None:
    if math.isnan(x_bar) or x_bar < 0.0 or x_bar > 1.0:
        raise DomainError(f"假定样本比例必须在 [0, 1] 之间: {x_bar}")


def _check_isoquant_inputs(m: float, target: float) -> None:
    if math.isnan(m) or m < 1:
        raise DomainError(f"未抽样部分规模 m 必须 >= 1: {m}")
    if math.isnan(target) or target < 0 or math.isinf(target):
        raise DomainError(f"目标有效样本量必须为有限非负数: {target}")


def required_sample_size(q: PlanQuery) -> float:
    """
    达到目标宽度所需的最小样本量 n̂ = inf{n >= 0 : w_∞(α, n, x̄) <= w}

    即二次方程 n² + 2χ²((w² - 2z)/w²)n - χ⁴(1 - w²)/w² = 0 的正根，z = x̄(1-x̄)。

    Args:
        q: 规划查询，必须给出 x_bar_assumed

    Returns:
        float: 实数样本量 n̂
    """
    if q.x_bar_assumed is None:
        raise DomainError("required_sample_size 需要假定样本比例，保守规划请使用 conservative_sample_size_exact")

    chi_sq = chi_sq_critical(q.alpha).chi_sq
    w_sq = q.width_target * q.width_target
    z = q.x_bar_assumed * (1.0 - q.x_bar_assumed)
    b = w_sq - 2.0 * z
    root = math.sqrt(w_sq - 4.0 * z * w_sq + 4.0 * z * z)

    # b >= 0 时用根的乘积形式，避免 root - b 的抵消
    if b >= 0:
        return chi_sq * (1.0 - w_sq) / (root + b)
    return (chi_sq / w_sq) * (root - b)


def required_sample_size_two_radical(q: PlanQuery) -> float:
    """
    所需样本量的双根号写法 (χ²/w²)[√(w² - 4zw² + 4z²) - √(w⁴ - 4zw² + 4z²)]

    第二个根号等于 |w² - 2z|，因此只在 w² >= 2z 时与 required_sample_size 相同；
    w² < 2z 时给出的值偏小。
    """
    if q.x_bar_assumed is None:
        raise DomainError("双根号写法需要假定样本比例")
    chi_sq = chi_sq_critical(q.alpha).chi_sq
    w_sq = q.width_target * q.width_target
    z = q.x_bar_assumed * (1.0 - q.x_bar_assumed)
    first = math.sqrt(w_sq - 4.0 * z * w_sq + 4.0 * z * z)
    second = math.sqrt(max(w_sq * w_sq - 4.0 * z * w_sq + 4.0 * z * z, 0.0))
    return (chi_sq / w_sq) * (first - second)


def conservative_sample_size_exact(w: float, alpha: float) -> float:
    """
    对所有样本比例都能达到目标宽度的样本量 χ²(1 - w²)/w²

    即 x̄ = 1/2 处的 n̂，由最大宽度 χ/√(n + χ²) = w 解出。
    """
    _check_width_and_alpha(w, alpha)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return chi_sq * (1.0 - w * w) / (w * w)


def conservative_sample_size_paper(w: float, alpha: float) -> float:
    """
    保守样本量的分段写法 χ²(1/2 - |w² - 1/2|)/w²

    w > 1/√2 时等于 conservative_sample_size_exact；
    w <= 1/√2 时恒为 χ²，低于真正的最坏情形，不能单独用于规划。
    """
    _check_width_and_alpha(w, alpha)
    chi_sq = chi_sq_critical(alpha).chi_sq
    w_sq = w * w
    return chi_sq * (0.5 - abs(w_sq - 0.5)) / w_sq


def required_sample_size_bounds(w: float, alpha: float) -> Tuple[float, float]:
    """
    n̂ 关于样本比例的取值范围

    Returns:
        Tuple[float, float]: (下界 χ²(1-w)/w，上界 conservative_sample_size_exact)
    """
    _check_width_and_alpha(w, alpha)
    chi_sq = chi_sq_critical(alpha).chi_sq
    return chi_sq * (1.0 - w) / w, conservative_sample_size_exact(w, alpha)


def required_sample_size_range(w: float, alpha: float, x_low: float, x_high: float) -> float:
    """
    样本比例落在 [x_low, x_high] 内任意位置时都足够的样本量

    n̂ 随 z = x̄(1-x̄) 单调不减，取区间内最接近 1/2 的比例即可。
    """
    _check_proportion(x_low)
    _check_proportion(x_high)
    if x_low > x_high:
        raise DomainError(f"比例范围下限不能大于上限: {x_low} > {x_high}")
    worst = min(max(0.5, x_low), x_high)
    return required_sample_size(PlanQuery(w, alpha, worst))


def required_sample_size_finite(target: Target, w: float, alpha: float, x_bar: float, N: float) -> float:
    """
    有限总体下的所需样本量，在宽度函数上用 brentq 求根

    - POPULATION: 宽度在 [0, N] 上从 1 单调降到 0，总有解
    - UNSAMPLED: 宽度只在 [0, N/2] 上单调下降，在该段求解；
      目标低于可达到的最小宽度时报错

    Args:
        target: 推断目标
        w: 目标宽度
        alpha: 显著性水平
        x_bar: 假定样本比例
        N: 总体规模

    Returns:
        float: 满足 w_target(α, n, x̄) <= w 的最小实数 n
    """
    _check_width_and_alpha(w, alpha)
    _check_proportion(x_bar)
    target = Target(target)
    if math.isinf(N) or target is Target.SUPERPOPULATION:
        return required_sample_size(PlanQuery(w, alpha, x_bar))
    check_population(0.0, N)

    def excess(n: float) -> float:
        return width(target, alpha, SampleSummary(n, x_bar), N) - w

    upper = N if target is Target.POPULATION else 0.5 * N
    if excess(upper) > 0:
        floor = width(target, alpha, SampleSummary(upper, x_bar), N)
        raise DomainError(f"总体规模 {N} 下未抽样比例区间的宽度不能低于 {floor:.6g}，目标宽度 {w} 无法达到")

    n_hat = brentq(excess, 0.0, upper, xtol=1e-12, maxiter=200)
    logger.debug(f"有限总体规划: target={target.value}, N={N}, n̂={n_hat}")
    return n_hat


def isoquant_sample_size(q: IsoquantQuery) -> float:
    """
    总体比例推断的等产量线：固定 n_* 时样本量关于未抽样规模 m 的函数

    解 n(n + m - 1)/m = n_*，即 n² + (m - 1)n - n_* m = 0 的正根
    n = [√(m² + (4n_* - 2)m + 1) - m + 1]/2，这里用等价的 2n_* m/(√(...) + m - 1) 计算。
    """
    m, target = q.m, q.n_star_target
    if target == 0:
        return 0.0
    root = math.sqrt(m * m + (4.0 * target - 2.0) * m + 1.0)
    return 2.0 * target * m / (root + m - 1.0)


def isoquant_sample_size_unsampled(m: float, n_double_star_target: float) -> float:
    """
    未抽样部分比例推断的等产量线：解 n·m/(n + m - 1) = n_**

    n = n_**(m - 1)/(m - n_**)，只在 m > n_** 时有定义
    """
    _check_isoquant_inputs(m, n_double_star_target)
    target = n_double_star_target
    if target == 0:
        return 0.0
    if m <= target:
        raise DomainError(f"未抽样等产量线要求 m > n_**: m={m}, n_**={target}")
    return target * (m - 1.0) / (m - target)


def isoquant_table(n_eff_target: float, m_values: Sequence[float], kind: str = "population") -> List[Tuple[float, float]]:
    """
    生成等产量线数据表

    Args:
        n_eff_target: 目标有效样本量
        m_values: 未抽样部分规模序列
        kind: population 或 unsampled

    Returns:
        List[Tuple[float, float]]: (m, n) 行
    """
    if kind not in ISOQUANT_KINDS:
        raise DomainError(f"未知的等产量线类型: {kind}")
    if not m_values:
        raise DomainError("m 的取值范围为空")

    rows = []
    for m in m_values:
        if kind == "population":
            n = isoquant_sample_size(IsoquantQuery(m, n_eff_target))
        else:
            n = isoquant_sample_size_unsampled(m, n_eff_target)
        rows.append((float(m), n))
    logger.info(f"生成等产量线 {len(rows)} 行 (kind={kind}, n_eff={n_eff_target})")
    return rows


def min_width_unsampled(alpha: float, N: float) -> float:
    """
    未抽样比例区间宽度的下限写法 χ²/(N/4 + χ²)

    n_** 的最大值是 N²/(4(N-1))，比 N/4 略大，
    因此真实的最小宽度略低于此值，见 min_width_unsampled_exact。
    """
    alpha = check_tail_area(alpha)
    if alpha == 0.0 or alpha == 1.0:
        raise DomainError(f"要求 0 < alpha < 1: {alpha}")
    check_population(0.0, N)
    if math.isinf(N):
        return 0.0
    chi_sq = chi_sq_critical(alpha).chi_sq
    return chi_sq / (0.25 * N + chi_sq)


def min_width_unsampled_exact(alpha: float, N: float) -> float:
    """
    未抽样比例区间在 0 <= n <= N、0 <= x̄ <= 1 上能达到的最小宽度

    在 n = N/2、x̄ ∈ {0, 1} 处取得：χ²/(n_**max + χ²)，n_**max = N²/(4(N-1))
    """
    alpha = check_tail_area(alpha)
    if alpha == 0.0 or alpha == 1.0:
        raise DomainError(f"要求 0 < alpha < 1: {alpha}")
    check_population(0.0, N)
    if math.isinf(N):
        return 0.0
    if N == 1:
        return 1.0
    chi_sq = chi_sq_critical(alpha).chi_sq
    n_max = effective_n_double_star(0.5 * N, N)
    return chi_sq / (n_max + chi_sq)


def width_bounds_infinite(alpha: float, n: float) -> Tuple[float, float]:
    """
    固定 alpha 和 n 时 w_∞ 的上下界

    Returns:
        Tuple[float, float]: (χ²/(n + χ²)，χ/√(n + χ²))，分别在 x̄ ∈ {0, 1} 和 x̄ = 1/2 取得
    """
    alpha = check_tail_area(alpha)
    if math.isnan(n) or n < 0:
        raise DomainError(f"样本量必须为非负数: {n}")
    # 与 wilson_core 的退化顺序一致
    if math.isinf(n):
        return 0.0, 0.0
    if n == 0:
        return 1.0, 1.0
    if alpha == 1.0:
        return 0.0, 0.0
    if alpha == 0.0:
        return 1.0, 1.0
    cp = chi_sq_critical(alpha)
    return cp.chi_sq / (n + cp.chi_sq), cp.chi / math.sqrt(n + cp.chi_sq)


def practical_sample_size(n_real: float) -> int:
    """实数样本量向上取整"""
    if math.isnan(n_real) or math.isinf(n_real) or n_real < 0:
        raise DomainError(f"样本量必须为有限非负数: {n_real}")
    return int(math.ceil(n_real))
