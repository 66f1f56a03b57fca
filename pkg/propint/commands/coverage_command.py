#!/usr/bin/env python3
"""
coverage 子命令：精确或蒙特卡洛覆盖率
"""

import math
import argparse
from typing import Dict, List

from ..errors import DomainError
from ..intervals import Target
from ..settings import Defaults, resolve_seed
from ..simulation import (
    CoverageMode,
    SimulationConfig,
    exact_coverage_finite,
    exact_coverage_superpop,
    mc_coverage,
)
from .base_command import BaseCommand, population_size, population_value, target_choice


class CoverageCommand(BaseCommand):
    """
    覆盖率子命令

    exact 模式忽略 --reps 和 --seed；有限总体且目标为 population/unsampled 时做超几何枚举，
    总体成功数取 --successes-in-population，缺省为 round(θN)
    """

    name = "coverage"
    help = "计算置信区间的覆盖率"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser, defaults: Defaults) -> None:
        parser.add_argument("--theta", type=float, help="超总体成功概率")
        parser.add_argument("--n", type=int, required=True, help="样本量")
        parser.add_argument(
            "--population-size",
            type=population_size,
            default=population_size(defaults.population_size),
            help="总体规模，正整数或 inf（默认 %(default)s）",
        )
        parser.add_argument("--successes-in-population", type=int, help="总体中的成功数 K（exact 有限总体模式）")
        parser.add_argument("--alpha", type=float, default=defaults.alpha, help="显著性水平（默认 %(default)s）")
        parser.add_argument(
            "--target",
            type=target_choice,
            default=target_choice(defaults.target),
            help="推断目标: superpop | population | unsampled",
        )
        parser.add_argument(
            "--mode",
            choices=[m.value for m in CoverageMode],
            default=CoverageMode.EXACT.value,
            help="exact（精确枚举）或 mc（蒙特卡洛）",
        )
        parser.add_argument("--reps", type=int, default=defaults.reps, help="蒙特卡洛重复次数（默认 %(default)s）")
        parser.add_argument("--seed", type=int, default=None, help="蒙特卡洛种子（优先于 PROPINT_SEED）")
        parser.add_argument("--workers", type=int, default=defaults.workers, help="蒙特卡洛线程数（默认 %(default)s）")

    def _finite_target(self, args: argparse.Namespace) -> bool:
        return not math.isinf(args.population_size) and args.target is not Target.SUPERPOPULATION

    def _run_exact(self, args: argparse.Namespace):
        N = args.population_size
        if args.n > self.defaults.max_exact_sample:
            raise DomainError(f"精确枚举要求 n <= {self.defaults.max_exact_sample}，请改用 --mode mc")

        if not self._finite_target(args):
            if args.theta is None:
                raise DomainError("无限总体的精确覆盖率需要 --theta")
            return exact_coverage_superpop(args.alpha, args.n, args.theta)

        if N > self.defaults.max_exact_population:
            raise DomainError(f"精确枚举要求 N <= {self.defaults.max_exact_population}，请改用 --mode mc")
        K = args.successes_in_population
        if K is None:
            if args.theta is None:
                raise DomainError("有限总体的精确覆盖率需要 --successes-in-population 或 --theta")
            K = int(round(args.theta * N))
        return exact_coverage_finite(args.alpha, args.n, int(N), K, args.target)

    def _run_mc(self, args: argparse.Namespace):
        if args.theta is None:
            raise DomainError("蒙特卡洛模式需要 --theta")
        config = SimulationConfig(
            theta=args.theta,
            n=args.n,
            N=args.population_size,
            alpha=args.alpha,
            target=args.target,
            reps=args.reps,
            seed=resolve_seed(args.seed, self.defaults),
        )
        report = mc_coverage(config, block_size=self.defaults.mc_block_size, workers=args.workers)
        return report, config.seed

    def build_records(self, args: argparse.Namespace) -> List[Dict]:
        seed = None
        if args.mode == CoverageMode.EXACT.value:
            report = self._run_exact(args)
        else:
            report, seed = self._run_mc(args)

        record = {
            "alpha": args.alpha,
            "n": args.n,
            "N": population_value(args.population_size),
            "theta": args.theta,
            "successes_in_population": args.successes_in_population,
            "seed": seed,
        }
        record.update(report.to_record())
        return [record]

    def render_text(self, records: List[Dict], args: argparse.Namespace) -> str:
        record = records[0]
        unit = "outcomes" if record["mode"] == CoverageMode.EXACT.value else "reps"
        lines = [
            f"Coverage of the {(1 - record['alpha']) * 100:.2f}% CI for {record['truth_tracked']} "
            f"(n = {record['n']}, N = {record['N']})",
            f"mode = {record['mode']}, {unit} = {record['reps_or_outcomes']}, covered = {record['covered']}",
            f"coverage = {record['coverage']:.6f}",
        ]
        if record["mode"] == CoverageMode.MONTE_CARLO.value:
            lines.append(f"standard error = {record['standard_error']:.6f}, seed = {record['seed']}")
        return "\n".join(lines)
