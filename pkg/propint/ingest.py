#!/usr/bin/env python3
"""
样本数据读取
支持直接给出样本量与成功数，或读取每行一个 0/1 的数据文件（可带单列 CSV 表头）
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import DataInputError, DomainError
from .intervals import SampleSummary

logger = logging.getLogger(__name__)

_BINARY_TOKENS = {"0": 0, "1": 1}


@dataclass(frozen=True)
class DataInput:
    """计数输入 (n, successes) 与文件输入 path 二选一"""

    n: Optional[int] = None
    successes: Optional[int] = None
    path: Optional[str] = None


def _is_numeric(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_binary_file(path: str) -> SampleSummary:
    """
    读取 0/1 数据文件

    第一个非空行如果不是数字，视为 CSV 表头跳过；其余非空行必须是 "0" 或 "1"

    Args:
        path: 数据文件路径（UTF-8，可带 BOM）

    Returns:
        SampleSummary: n 为数据个数，x̄ 为均值，label 为文件名（不含扩展名）
    """
    try:
        with open(path, "r", encoding="utf-8-sig") as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise DataInputError(f"无法读取数据文件: {e}", path=path)

    count = 0
    successes = 0
    seen_first = False
    for line_number, raw in enumerate(lines, 1):
        token = raw.strip()
        if not token:
            continue
        if not seen_first:
            seen_first = True
            if token not in _BINARY_TOKENS and not _is_numeric(token):
                logger.info(f"跳过表头: {token}")
                continue
        if token not in _BINARY_TOKENS:
            raise DataInputError(f"非 0/1 数据: {token!r}", path=path, line_number=line_number)
        count += 1
        successes += _BINARY_TOKENS[token]

    if count == 0:
        raise DataInputError("数据文件中没有 0/1 数据", path=path)

    logger.info(f"读取数据文件 {path}: n={count}, successes={successes}")
    return SampleSummary.from_counts(count, successes, label=Path(path).stem)


def ingest_data(data: DataInput) -> SampleSummary:
    """
    把输入转成样本概要

    Args:
        data: 计数或文件输入

    Returns:
        SampleSummary: 样本概要
    """
    if data.path is not None:
        if data.n is not None or data.successes is not None:
            raise DomainError("--data 不能与 --n/--successes 同时使用")
        return read_binary_file(data.path)

    if data.n is None or data.successes is None:
        raise DomainError("需要同时给出 --n 和 --successes，或使用 --data 指定数据文件")
    return SampleSummary.from_counts(data.n, data.successes)
