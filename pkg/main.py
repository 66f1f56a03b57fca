#!/usr/bin/env python3
"""
propint - 有限总体比例置信区间工具 - 主入口

子命令:
- ci:        计算超总体/总体/未抽样部分比例的 Wilson 置信区间
- plan:      计算达到目标区间宽度所需的样本量
- isoquant:  输出固定有效样本量的等产量线
- coverage:  精确枚举或蒙特卡洛计算覆盖率

配置:
1. config/defaults.json 提供命令行默认值（可用 --config 或 PROPINT_CONFIG 指定其他文件）
2. .env 中可设置 PROPINT_SEED、PROPINT_LOG_DIR、PROPINT_LOG_LEVEL
"""

import os
import sys
import logging
import argparse
from typing import List, Optional

from propint.commands.base_command import EXIT_USAGE
from propint.commands.command_factory import CommandFactory
from propint.report import OUTPUT_FORMATS
from propint.settings import (
    Defaults,
    load_defaults,
    load_environment,
    resolve_log_dir,
    resolve_log_level,
)

LOG_FILE_NAME = "propint.log"

logger = logging.getLogger(__name__)


def setup_logging(defaults: Defaults, verbose: bool = False) -> None:
    """
    配置日志
    标准输出只用于结果，日志写到标准错误；PROPINT_LOG_DIR 目录存在时同时写入日志文件
    """
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_dir = resolve_log_dir()
    if log_dir:
        handlers.append(logging.FileHandler(os.path.join(log_dir, LOG_FILE_NAME), encoding="utf-8"))

    logging.basicConfig(
        level=resolve_log_level(defaults, verbose),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def build_parser(defaults: Defaults) -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(
        prog="propint",
        description="有限总体比例置信区间工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python main.py ci --n 60 --successes 39 --population-size 200 --target population
  python main.py ci --data sample.csv --format json
  python main.py plan --width 0.1 --alpha 0.05 --assumed-prop 0.3
  python main.py plan --width 0.1                 # 保守样本量
  python main.py isoquant --effective-n 100 --m-range 1:1000:50
  python main.py coverage --theta 0.3 --n 50 --mode mc --reps 100000 --seed 7
        """,
    )
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=defaults.format,
        help="输出格式（默认 %(default)s）",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="输出 INFO 级别日志")
    parser.add_argument("--config", type=str, help="默认值配置文件路径")

    # 子命令中也可以写 --format，写了才覆盖全局值
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help="输出格式")

    subparsers = parser.add_subparsers(dest="command", metavar="{ci,plan,isoquant,coverage}")
    subparsers.required = True
    CommandFactory.register_subparsers(subparsers, defaults, parents=[common])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    argv = sys.argv[1:] if argv is None else list(argv)
    load_environment()

    # 先取出 --config，子命令的默认值依赖配置文件
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config", type=str)
    pre_parser.add_argument("--verbose", "-v", action="store_true")
    pre_args, _ = pre_parser.parse_known_args(argv)

    defaults = load_defaults(pre_args.config)
    setup_logging(defaults, pre_args.verbose)

    parser = build_parser(defaults)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    command = CommandFactory.create_command(args.command, defaults)
    if command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    logger.info(f"运行子命令: {args.command}")
    return command.execute(args)


if __name__ == "__main__":
    sys.exit(main())
