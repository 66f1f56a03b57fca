#!/usr/bin/env python3
"""
异常类型
DomainError 对应参数越界（命令行退出码 2），DataInputError 对应数据文件错误（退出码 3）
"""

from typing import Optional


class DomainError(ValueError):
    """参数不满足前置条件"""


class DataInputError(Exception):
    """
    数据文件无法读取或格式错误

    Args:
        message: 错误描述
        path: 数据文件路径
        line_number: 第一个错误行的行号（从1开始），文件为空或无法读取时为None
    """

    def __init__(self, message: str, path: Optional[str] = None, line_number: Optional[int] = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}:{line_number}: " if line_number is not None else f"{path}: "
        super().__init__(f"{location}{message}")
