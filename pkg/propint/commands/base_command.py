#!/usr/bin/env python3
"""
子命令抽象基类
定义子命令的通用接口、参数解析辅助函数，以及输出和错误处理的共享逻辑
"""

import sys
import math
import logging
import argparse
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, TextIO

from ..errors import DataInputError, DomainError
from ..intervals import INFINITE, Target
from ..report import render_csv, render_json
from ..settings import Defaults

logger = logging.getLogger(__name__)

# 退出码
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def population_size(text: str) -> float:
    """
    解析 --population-size：正整数或 inf

    Returns:
        float: 有限总体返回整数值的浮点数，无限总体返回 INFINITE
    """
    value = text.strip().lower()
    if value in ("inf", "infinite", "infinity"):
        return INFINITE
    try:
        size = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"总体规模必须是正整数或 inf: {text}")
    if size < 1:
        raise argparse.ArgumentTypeError(f"总体规模必须 >= 1: {text}")
    return float(size)


def target_choice(text: str) -> Target:
    """解析 --target"""
    try:
        return Target(text.strip().lower())
    except ValueError:
        choices = ", ".join(t.value for t in Target)
        raise argparse.ArgumentTypeError(f"未知的推断目标 {text}（可选: {choices}）")


def population_value(N: float):
    """记录中的总体规模：有限时为整数，无限时为 inf"""
    return N if math.isinf(N) else int(N)


class BaseCommand(ABC):
    """
    子命令抽象基类
    所有子命令需要继承此类并实现 add_arguments、build_records 和 render_text
    """

    name: str = ""
    help: str = ""

    def __init__(self, defaults: Defaults):
        """
        Args:
            defaults: 命令行默认值（config/defaults.json）
        """
        self.defaults = defaults

    @classmethod
    @abstractmethod
    def add_arguments(cls, parser: argparse.ArgumentParser, defaults: Defaults) -> None:
        """注册子命令参数"""

    @abstractmethod
    def build_records(self, args: argparse.Namespace) -> List[Dict]:
        """计算结果，返回输出记录列表"""

    @abstractmethod
    def render_text(self, records: List[Dict], args: argparse.Namespace) -> str:
        """文本格式输出"""

    @property
    def is_table(self) -> bool:
        """结果是否为多行表格（影响 JSON 输出形态）"""
        return False

    def render(self, records: List[Dict], args: argparse.Namespace) -> str:
        output_format = getattr(args, "format", None) or self.defaults.format
        if output_format == "json":
            return render_json(records, as_table=self.is_table)
        if output_format == "csv":
            return render_csv(records)
        return self.render_text(records, args)

    def execute(self, args: argparse.Namespace, stdout: Optional[TextIO] = None,
                stderr: Optional[TextIO] = None) -> int:
        """
        运行子命令并输出结果

        Returns:
            int: 退出码，成功 0，参数或取值错误 2，数据文件错误 3
        """
        stdout = stdout or sys.stdout
        stderr = stderr or sys.stderr
        try:
            records = self.build_records(args)
        except DataInputError as e:
            logger.error(f"[{self.name}] 数据读取失败: {e}")
            print(f"propint: error: {e}", file=stderr)
            return EXIT_DATA
        except DomainError as e:
            logger.error(f"[{self.name}] 参数错误: {e}")
            print(f"propint: error: {e}", file=stderr)
            return EXIT_USAGE

        print(self.render(records, args), file=stdout)
        return EXIT_OK
