#!/usr/bin/env python3
"""
plan 子命令：样本量规划
"""

import math
import argparse
from typing import Dict, List, Tuple

from ..intervals import Target
from ..planning import (
    PlanQuery,
    conservative_sample_size_exact,
    conservative_sample_size_paper,
    min_width_unsampled,
    min_width_unsampled_exact,
    practical_sample_size,
    required_sample_size,
    required_sample_size_bounds,
    required_sample_size_finite,
    required_sample_size_range,
)
from ..report import format_number
from ..settings import Defaults
from .base_command import BaseCommand, population_size, population_value, target_choice

CONSERVATIVE_CHOICES = ("exact", "paper")


def proportion_range(text: str) -> Tuple[float, float]:
    """解析 --assumed-range lo:hi"""
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"比例范围格式应为 lo:hi: {text}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"比例范围必须是数字: {text}")


class PlanCommand(BaseCommand):
    """
    样本量规划子命令

    - 给出 --assumed-prop：按假定比例计算 n̂（有限总体时在宽度函数上求根）
    - 给出 --assumed-range：对范围内任意比例都足够的样本量
    - 都不给：保守样本量，同时输出 exact 与 paper_theorem14 两种写法
    """

    name = "plan"
    help = "计算达到目标区间宽度所需的样本量"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser, defaults: Defaults) -> None:
        parser.add_argument("--width", type=float, required=True, help="目标区间宽度，0 < w < 1")
        parser.add_argument("--alpha", type=float, default=defaults.alpha, help="显著性水平（默认 %(default)s）")
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--assumed-prop", type=float, help="假定的样本比例")
        group.add_argument("--assumed-range", type=proportion_range, help="假定样本比例的范围 lo:hi")
        parser.add_argument(
            "--conservative",
            choices=CONSERVATIVE_CHOICES,
            default="exact",
            help="保守规划时作为结果的写法（默认 %(default)s）",
        )
        parser.add_argument(
            "--population-size",
            type=population_size,
            default=population_size(defaults.population_size),
            help="总体规模，正整数或 inf；只在给出 --assumed-prop 时使用",
        )
        parser.add_argument(
            "--target",
            type=target_choice,
            default=target_choice(defaults.target),
            help="推断目标: superpop | population | unsampled",
        )
        parser.add_argument("--ceil", action="store_true", help="文本输出中给出向上取整后的样本量")

    def build_records(self, args: argparse.Namespace) -> List[Dict]:
        w, alpha = args.width, args.alpha
        N = args.population_size
        record: Dict = {"width": w, "alpha": alpha}

        if args.assumed_prop is not None:
            if math.isinf(N) or args.target is Target.SUPERPOPULATION:
                n_hat = required_sample_size(PlanQuery(w, alpha, args.assumed_prop))
                record.update(mode="assumed", assumed_prop=args.assumed_prop)
            else:
                n_hat = required_sample_size_finite(args.target, w, alpha, args.assumed_prop, N)
                record.update(mode="finite", assumed_prop=args.assumed_prop,
                              target=args.target.value, N=population_value(N))
                if args.target is Target.UNSAMPLED:
                    record.update(min_width_exact=min_width_unsampled_exact(alpha, N),
                                  min_width_closed_form=min_width_unsampled(alpha, N))
        elif args.assumed_range is not None:
            low, high = args.assumed_range
            n_hat = required_sample_size_range(w, alpha, low, high)
            record.update(mode="range", assumed_low=low, assumed_high=high)
        else:
            exact = conservative_sample_size_exact(w, alpha)
            paper = conservative_sample_size_paper(w, alpha)
            lower, _ = required_sample_size_bounds(w, alpha)
            n_hat = exact if args.conservative == "exact" else paper
            record.update(mode="conservative", selected=args.conservative,
                          exact=exact, paper_theorem14=paper, lower_bound=lower,
                          conservative_forms_agree=w * w >= 0.5)

        record.update(required_n=n_hat, practical_n=practical_sample_size(n_hat))
        return [record]

    def render_text(self, records: List[Dict], args: argparse.Namespace) -> str:
        record = records[0]
        lines = [f"Required sample size for width {record['width']:g} at {(1 - record['alpha']) * 100:.2f}% confidence"]
        mode = record["mode"]
        if mode == "assumed":
            lines.append(f"assumed sample proportion = {record['assumed_prop']:.4f}")
        elif mode == "finite":
            lines.append(f"assumed sample proportion = {record['assumed_prop']:.4f}, "
                         f"target = {record['target']}, population size = {record['N']}")
        elif mode == "range":
            lines.append(f"assumed sample proportion in [{record['assumed_low']:.4f}, {record['assumed_high']:.4f}]")
        else:
            lines.append(f"conservative (any sample proportion), selected = {record['selected']}")
            lines.append(f"  exact            = {format_number(record['exact'])}")
            note = "" if record["conservative_forms_agree"] else "  (below the worst case for w <= 1/sqrt(2))"
            lines.append(f"  paper_theorem14  = {format_number(record['paper_theorem14'])}{note}")
            lines.append(f"  lower bound      = {format_number(record['lower_bound'])}")

        if args.ceil:
            lines.append(f"n = {record['practical_n']}")
        else:
            lines.append(f"n = {format_number(record['required_n'])} (ceil {record['practical_n']})")
        return "\n".join(lines)
