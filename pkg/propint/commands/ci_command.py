#!/usr/bin/env python3
"""
ci 子命令：计算置信区间
"""

import argparse
from typing import Dict, List

from ..ingest import DataInput, ingest_data
from ..intervals import confidence_interval, describe_target, effective_sample_size
from ..report import render_interval_block
from ..settings import Defaults
from .base_command import BaseCommand, population_size, population_value, target_choice


class CiCommand(BaseCommand):
    """
    置信区间子命令
    文本输出与 R 的 CONF.prop 结果块结构相同，区间计算全部交给 intervals 模块
    """

    name = "ci"
    help = "计算置信区间"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser, defaults: Defaults) -> None:
        parser.add_argument("--alpha", type=float, default=defaults.alpha, help="显著性水平（默认 %(default)s）")
        parser.add_argument("--n", type=int, help="样本量")
        parser.add_argument("--successes", type=int, help="样本中的成功数")
        parser.add_argument("--data", type=str, help="0/1 数据文件（每行一个，可带单列 CSV 表头）")
        parser.add_argument(
            "--population-size",
            type=population_size,
            default=population_size(defaults.population_size),
            help="总体规模，正整数或 inf（默认 %(default)s）",
        )
        parser.add_argument(
            "--target",
            type=target_choice,
            default=target_choice(defaults.target),
            help="推断目标: superpop | population | unsampled",
        )

    def build_records(self, args: argparse.Namespace) -> List[Dict]:
        sample = ingest_data(DataInput(n=args.n, successes=args.successes, path=args.data))
        N = args.population_size
        interval = confidence_interval(args.target, args.alpha, sample, N)
        return [{
            "target": args.target.value,
            "alpha": args.alpha,
            "confidence": 1.0 - args.alpha,
            "n": int(sample.n),
            "successes": sample.successes,
            "N": population_value(N),
            "x_bar": sample.x_bar,
            "lower": interval.lower,
            "upper": interval.upper,
            "width": interval.width,
            "effective_n": effective_sample_size(args.target, sample.n, N),
            "label": sample.label,
        }]

    def render_text(self, records: List[Dict], args: argparse.Namespace) -> str:
        record = records[0]
        return render_interval_block(
            confidence=record["confidence"],
            description=describe_target(args.target, args.population_size, record["n"]),
            n=record["n"],
            x_bar=record["x_bar"],
            lower=record["lower"],
            upper=record["upper"],
            label=record["label"],
        )
