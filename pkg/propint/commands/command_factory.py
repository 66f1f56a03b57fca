#!/usr/bin/env python3
"""
子命令工厂
注册子命令参数并按名称创建子命令实例
"""

import logging
import argparse
from typing import Dict, Optional, Type

from ..settings import Defaults
from .base_command import BaseCommand
from .ci_command import CiCommand
from .coverage_command import CoverageCommand
from .isoquant_command import IsoquantCommand
from .plan_command import PlanCommand

logger = logging.getLogger(__name__)


class CommandFactory:
    """
    子命令工厂类
    负责注册子命令的参数解析器，并根据名称创建实例
    """

    COMMANDS: Dict[str, Type[BaseCommand]] = {
        CiCommand.name: CiCommand,
        PlanCommand.name: PlanCommand,
        IsoquantCommand.name: IsoquantCommand,
        CoverageCommand.name: CoverageCommand,
    }

    @staticmethod
    def register_subparsers(subparsers, defaults: Defaults, parents=None) -> None:
        """
        为每个子命令添加解析器

        Args:
            subparsers: ArgumentParser.add_subparsers() 的返回值
            defaults: 命令行默认值
            parents: 各子命令共享的父解析器
        """
        for name, command_cls in CommandFactory.COMMANDS.items():
            parser = subparsers.add_parser(
                name,
                help=command_cls.help,
                parents=parents or [],
                formatter_class=argparse.RawDescriptionHelpFormatter,
            )
            command_cls.add_arguments(parser, defaults)

    @staticmethod
    def create_command(name: str, defaults: Defaults) -> Optional[BaseCommand]:
        """
        根据名称创建子命令实例

        Args:
            name: 子命令名称
            defaults: 命令行默认值

        Returns:
            Optional[BaseCommand]: 子命令实例，未知名称返回None
        """
        command_cls = CommandFactory.COMMANDS.get(name)
        if command_cls is None:
            logger.warning(f"未知的子命令: {name}")
            return None
        return command_cls(defaults)
