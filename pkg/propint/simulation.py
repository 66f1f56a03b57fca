#!/usr/bin/env python3
"""
覆盖率校验
对二项分布（无限总体）和超几何分布（有限总体）的结果空间做精确枚举，
较大的情形用带种子的蒙特卡洛重复抽样
"""

import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from .errors import DomainError
from .intervals import INFINITE, SampleSummary, Target, check_population, confidence_interval
from .quantiles import check_tail_area

logger = logging.getLogger(__name__)

# 精确枚举的规模上限
MAX_EXACT_SAMPLE = 100_000
MAX_EXACT_POPULATION = 5000

# 蒙特卡洛的分块大小，子随机流按块派生，与线程数无关
DEFAULT_BLOCK_SIZE = 10_000

_MAX_SEED = 2 ** 64


class CoverageMode(str, Enum):
    """覆盖率计算方式"""

    EXACT = "exact"
    MONTE_CARLO = "mc"


@dataclass(frozen=True)
class SimulationConfig:
    """
    蒙特卡洛覆盖率配置

    theta 为超总体成功概率，N 为 INFINITE 时只抽取样本成功数
    """

    theta: float
    n: int
    N: float
    alpha: float
    target: Target
    reps: int
    seed: int

    def __post_init__(self):
        if math.isnan(self.theta) or self.theta < 0.0 or self.theta > 1.0:
            raise DomainError(f"theta 必须在 [0, 1] 之间: {self.theta}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"样本量必须为正整数: {self.n}")
        if not math.isinf(self.N) and int(self.N) != self.N:
            raise DomainError(f"总体规模必须为整数或 inf: {self.N}")
        check_population(self.n, self.N)
        check_tail_area(self.alpha)
        object.__setattr__(self, "target", Target(self.target))
        if int(self.reps) != self.reps or self.reps < 1:
            raise DomainError(f"重复次数必须为正整数: {self.reps}")
        if int(self.seed) != self.seed or self.seed < 0 or self.seed >= _MAX_SEED:
            raise DomainError(f"种子必须是 64 位无符号整数: {self.seed}")


@dataclass(frozen=True)
class CoverageReport:
    """
    覆盖率结果

    EXACT 模式下 reps_or_outcomes 为结果空间大小，covered 为覆盖真值的结果个数，standard_error 为 0；
    MONTE_CARLO 模式下为重复次数与命中次数，standard_error = √(c(1-c)/reps)
    """

    coverage: float
    reps_or_outcomes: int
    covered: int
    standard_error: float
    mode: CoverageMode
    truth_tracked: Target

    def to_record(self) -> Dict:
        record = asdict(self)
        record["mode"] = self.mode.value
        record["truth_tracked"] = self.truth_tracked.value
        return record


def binomial_pmf(n: int, theta: float) -> Tuple[int, np.ndarray]:
    """
    Binomial(n, θ) 的概率质量，从众数出发按比值递推后归一化

    Returns:
        Tuple[int, np.ndarray]: (支撑集起点 0，k = 0..n 的概率)
    """
    masses = np.zeros(n + 1)
    if theta == 0.0:
        masses[0] = 1.0
        return 0, masses
    if theta == 1.0:
        masses[n] = 1.0
        return 0, masses

    odds = theta / (1.0 - theta)
    mode = min(n, int(math.floor((n + 1) * theta)))
    masses[mode] = 1.0
    for k in range(mode, n):
        masses[k + 1] = masses[k] * (n - k) / (k + 1) * odds
    for k in range(mode, 0, -1):
        masses[k - 1] = masses[k] * k / ((n - k + 1) * odds)
    return 0, masses / math.fsum(masses)


def hypergeometric_pmf(N: int, K: int, n: int) -> Tuple[int, np.ndarray]:
    """
    从含 K 个成功的 N 个个体中无放回抽 n 个，成功数的概率质量

    Returns:
        Tuple[int, np.ndarray]: (支撑集起点 k_min，k = k_min..k_max 的概率)
    """
    k_min = max(0, n - (N - K))
    k_max = min(n, K)
    masses = np.zeros(k_max - k_min + 1)
    mode = (n + 1) * (K + 1) // (N + 2)
    mode = min(max(mode, k_min), k_max)

    masses[mode - k_min] = 1.0
    for k in range(mode, k_max):
        ratio = (K - k) * (n - k) / ((k + 1) * (N - K - n + k + 1))
        masses[k + 1 - k_min] = masses[k - k_min] * ratio
    for k in range(mode, k_min, -1):
        ratio = (K - k + 1) * (n - k + 1) / (k * (N - K - n + k))
        masses[k - 1 - k_min] = masses[k - k_min] / ratio
    return k_min, masses / math.fsum(masses)


def exact_coverage_superpop(alpha: float, n: int, theta: float) -> CoverageReport:
    """
    标准区间的精确覆盖率：对 k = 0..n 累加 CI_∞(α, n, k/n) 覆盖 θ 的二项概率

    alpha = 1 时区间退化为点，只有 k/n = θ 的结果覆盖

    Args:
        alpha: 显著性水平，0 < alpha <= 1
        n: 样本量，1 <= n <= 100000
        theta: 超总体成功概率，0 < theta < 1

    Returns:
        CoverageReport: EXACT 模式的覆盖率
    """
    alpha = check_tail_area(alpha)
    if alpha == 0.0:
        raise DomainError("alpha = 0 时区间恒为 [0, 1]，精确覆盖率要求 alpha > 0")
    if int(n) != n or n < 1 or n > MAX_EXACT_SAMPLE:
        raise DomainError(f"精确枚举要求 1 <= n <= {MAX_EXACT_SAMPLE} 的整数: {n}")
    if math.isnan(theta) or theta <= 0.0 or theta >= 1.0:
        raise DomainError(f"精确枚举要求 0 < theta < 1: {theta}")

    n = int(n)
    _, masses = binomial_pmf(n, theta)
    covered_masses = []
    for k in range(n + 1):
        ci = confidence_interval(Target.SUPERPOPULATION, alpha, SampleSummary(n, k / n), INFINITE)
        if ci.contains(theta):
            covered_masses.append(masses[k])

    coverage = math.fsum(covered_masses)
    return CoverageReport(
        coverage=coverage,
        reps_or_outcomes=n + 1,
        covered=len(covered_masses),
        standard_error=0.0,
        mode=CoverageMode.EXACT,
        truth_tracked=Target.SUPERPOPULATION,
    )


def exact_coverage_finite(alpha: float, n: int, N: int, K: int, target: Target) -> CoverageReport:
    """
    有限总体区间的精确覆盖率：总体中有 K 个成功，对超几何支撑集上的样本成功数 k 枚举

    POPULATION 的真值为 K/N，UNSAMPLED 的真值为 (K-k)/(N-n)；
    n = N 时未抽样部分不存在，区间为 [0, 1]，按覆盖计

    Args:
        alpha: 显著性水平
        n: 样本量
        N: 总体规模，不超过 5000
        K: 总体成功数
        target: POPULATION 或 UNSAMPLED

    Returns:
        CoverageReport: EXACT 模式的覆盖率
    """
    alpha = check_tail_area(alpha)
    target = Target(target)
    if target is Target.SUPERPOPULATION:
        raise DomainError("有限总体的精确覆盖率只适用于 population 和 unsampled 目标")
    for name, value in (("n", n), ("N", N), ("K", K)):
        if int(value) != value:
            raise DomainError(f"{name} 必须为整数: {value}")
    n, N, K = int(n), int(N), int(K)
    if N < 1 or N > MAX_EXACT_POPULATION:
        raise DomainError(f"精确枚举要求 1 <= N <= {MAX_EXACT_POPULATION}: {N}")
    if K < 0 or K > N:
        raise DomainError(f"总体成功数必须在 0 到 N 之间: K={K}, N={N}")
    if n < 1 or n > N:
        raise DomainError(f"精确枚举要求 1 <= n <= N: n={n}, N={N}")

    k_min, masses = hypergeometric_pmf(N, K, n)
    covered_masses = []
    for offset, mass in enumerate(masses):
        k = k_min + offset
        ci = confidence_interval(target, alpha, SampleSummary(n, k / n), N)
        if target is Target.POPULATION:
            hit = ci.contains(K / N)
        elif n == N:
            hit = True
        else:
            hit = ci.contains((K - k) / (N - n))
        if hit:
            covered_masses.append(mass)

    return CoverageReport(
        coverage=math.fsum(covered_masses),
        reps_or_outcomes=len(masses),
        covered=len(covered_masses),
        standard_error=0.0,
        mode=CoverageMode.EXACT,
        truth_tracked=target,
    )


def generate_population(theta: float, N: int, seed: int) -> np.ndarray:
    """
    生成 N 个独立同分布的 Bernoulli(θ) 取值

    Returns:
        np.ndarray: 长度为 N 的 0/1 数组（int8），相同种子结果相同
    """
    if math.isnan(theta) or theta < 0.0 or theta > 1.0:
        raise DomainError(f"theta 必须在 [0, 1] 之间: {theta}")
    if math.isinf(N) or int(N) != N or N < 1:
        raise DomainError(f"总体规模必须为正整数: {N}")
    rng = np.random.default_rng(seed)
    return (rng.random(int(N)) < theta).astype(np.int8)


def _interval_table(config: SimulationConfig) -> Tuple[np.ndarray, np.ndarray]:
    # 样本量与总体规模固定，每个成功数 k 对应的区间只算一次
    lowers = np.empty(config.n + 1)
    uppers = np.empty(config.n + 1)
    for k in range(config.n + 1):
        ci = confidence_interval(config.target, config.alpha, SampleSummary(config.n, k / config.n), config.N)
        lowers[k] = ci.lower
        uppers[k] = ci.upper
    return lowers, uppers


def _block_sizes(reps: int, block_size: int) -> List[int]:
    full, rest = divmod(reps, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _run_block(config: SimulationConfig, seed_seq: np.random.SeedSequence, size: int,
               lowers: np.ndarray, uppers: np.ndarray) -> int:
    """
    运行一个块，返回覆盖真值的次数

    有限总体先抽前 n 个个体的成功数，再抽其余 N-n 个的成功数，
    与生成整个总体后取前 n 个的分布相同
    """
    rng = np.random.default_rng(seed_seq)
    k = rng.binomial(config.n, config.theta, size=size)

    if math.isinf(config.N) or config.target is Target.SUPERPOPULATION:
        truth = np.full(size, config.theta)
    elif config.n == config.N:
        if config.target is Target.UNSAMPLED:
            return size
        truth = k / config.N
    else:
        rest = int(config.N) - config.n
        unsampled = rng.binomial(rest, config.theta, size=size)
        if config.target is Target.POPULATION:
            truth = (k + unsampled) / config.N
        else:
            truth = unsampled / rest

    covered = (lowers[k] <= truth) & (truth <= uppers[k])
    return int(np.count_nonzero(covered))


def mc_coverage(config: SimulationConfig, block_size: int = DEFAULT_BLOCK_SIZE, workers: int = 1) -> CoverageReport:
    """
    蒙特卡洛覆盖率

    重复次数按 block_size 切块，第 b 块使用 SeedSequence(seed).spawn(B)[b] 派生的子随机流，
    切块只取决于 reps 和 block_size，串行与并行结果逐位相同

    Args:
        config: 模拟配置
        block_size: 每块的重复次数
        workers: 线程数

    Returns:
        CoverageReport: MONTE_CARLO 模式的覆盖率
    """
    if int(block_size) != block_size or block_size < 1:
        raise DomainError(f"分块大小必须为正整数: {block_size}")
    if int(workers) != workers or workers < 1:
        raise DomainError(f"线程数必须为正整数: {workers}")

    sizes = _block_sizes(config.reps, int(block_size))
    children = np.random.SeedSequence(config.seed).spawn(len(sizes))
    lowers, uppers = _interval_table(config)
    logger.info(f"蒙特卡洛覆盖率开始: reps={config.reps}, blocks={len(sizes)}, seed={config.seed}, workers={workers}")

    def run(index: int) -> int:
        return _run_block(config, children[index], sizes[index], lowers, uppers)

    if workers == 1:
        hits = [run(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            hits = list(pool.map(run, range(len(sizes))))

    covered = sum(hits)
    coverage = covered / config.reps
    logger.info(f"蒙特卡洛覆盖率完成: coverage={coverage:.6f}")
    return CoverageReport(
        coverage=coverage,
        reps_or_outcomes=config.reps,
        covered=covered,
        standard_error=math.sqrt(coverage * (1.0 - coverage) / config.reps),
        mode=CoverageMode.MONTE_CARLO,
        truth_tracked=config.target,
    )
