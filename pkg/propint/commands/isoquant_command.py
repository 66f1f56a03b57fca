#!/usr/bin/env python3
"""
isoquant 子命令：等产量线数据表
"""

import math
import argparse
from typing import Dict, List, Tuple

from ..errors import DomainError
from ..planning import ISOQUANT_KINDS, isoquant_table
from ..report import format_number, render_table
from ..settings import Defaults
from .base_command import BaseCommand


def m_range(text: str) -> Tuple[float, float, float]:
    """解析 --m-range lo:hi:step"""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"m 范围格式应为 lo:hi:step: {text}")
    try:
        return float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"m 范围必须是数字: {text}")


def expand_range(low: float, high: float, step: float) -> List[float]:
    """展开 lo:hi:step（包含端点 hi），范围为空或步长非正时报错"""
    if any(math.isnan(v) or math.isinf(v) for v in (low, high, step)):
        raise DomainError("m 范围必须是有限数字")
    if step <= 0:
        raise DomainError(f"m 范围的步长必须为正数: {step}")
    if high < low:
        raise DomainError(f"m 范围为空: {low}:{high}:{step}")
    count = int(math.floor((high - low) / step + 1e-9)) + 1
    return [low + i * step for i in range(count)]


class IsoquantCommand(BaseCommand):
    """等产量线子命令，输出 (m, n) 表"""

    name = "isoquant"
    help = "输出固定有效样本量时样本量关于未抽样规模 m 的等产量线"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser, defaults: Defaults) -> None:
        parser.add_argument("--effective-n", type=float, required=True, help="目标有效样本量")
        parser.add_argument("--m-range", type=m_range, required=True, help="未抽样规模范围 lo:hi:step")
        parser.add_argument(
            "--kind",
            choices=ISOQUANT_KINDS,
            default="population",
            help="population（固定 n_*）或 unsampled（固定 n_**，要求 m > n_**）",
        )

    @property
    def is_table(self) -> bool:
        return True

    def build_records(self, args: argparse.Namespace) -> List[Dict]:
        m_values = expand_range(*args.m_range)
        rows = isoquant_table(args.effective_n, m_values, kind=args.kind)
        return [{"kind": args.kind, "effective_n": args.effective_n, "m": m, "n": n} for m, n in rows]

    def render_text(self, records: List[Dict], args: argparse.Namespace) -> str:
        title = f"Isoquant ({args.kind}) for effective sample size {args.effective_n:g}"
        rows = [[f"{r['m']:g}", format_number(r["n"])] for r in records]
        return title + "\n" + render_table(["m", "n"], rows)
