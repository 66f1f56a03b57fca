#!/usr/bin/env python3
"""
配置加载
读取 .env 环境变量和 config/defaults.json 中的命令行默认值
"""

import os
import json
import logging
from dataclasses import Field, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import DomainError
from .simulation import DEFAULT_BLOCK_SIZE, MAX_EXACT_POPULATION, MAX_EXACT_SAMPLE

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "defaults.json"

SEED_ENV = "PROPINT_SEED"
CONFIG_ENV = "PROPINT_CONFIG"
LOG_DIR_ENV = "PROPINT_LOG_DIR"
LOG_LEVEL_ENV = "PROPINT_LOG_LEVEL"


@dataclass(frozen=True)
class Defaults:
    """命令行默认值"""

    alpha: float = 0.05
    target: str = "superpop"
    population_size: str = "inf"
    format: str = "text"
    reps: int = 10000
    seed: int = 20240101
    mc_block_size: int = DEFAULT_BLOCK_SIZE
    workers: int = 1
    max_exact_population: int = MAX_EXACT_POPULATION
    max_exact_sample: int = MAX_EXACT_SAMPLE
    log_level: str = "WARNING"


def load_environment() -> None:
    """加载当前目录下的 .env"""
    load_dotenv()


def _coerce(field: Field, value: Any) -> Any:
    """
    把配置值转换为字段类型，无法转换时记录警告并返回 None（保留内置默认值）

    整数字段不接受带小数部分的值；字符串字段也接受整数（如 "population_size": 200）
    """
    target = field.type
    try:
        if isinstance(value, bool) or value is None:
            raise ValueError(value)
        if target is str:
            if not isinstance(value, (str, int)):
                raise ValueError(value)
            return str(value)
        if target is int:
            if isinstance(value, float):
                if not value.is_integer():
                    raise ValueError(value)
                return int(value)
            return int(value.strip()) if isinstance(value, str) else int(value)
        return target(value)
    except (TypeError, ValueError, OverflowError):
        logger.warning(f"配置项 {field.name} 的值无效，使用内置默认值: {value!r}")
        return None


def load_defaults(config_path: Optional[str] = None) -> Defaults:
    """
    加载默认值配置

    Args:
        config_path: 配置文件路径，缺省时依次使用 PROPINT_CONFIG 和 config/defaults.json

    Returns:
        Defaults: 配置文件缺失或无法解析时返回内置默认值
    """
    path = config_path or os.getenv(CONFIG_ENV) or str(DEFAULT_CONFIG_PATH)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data: Dict = json.load(f)
    except FileNotFoundError:
        logger.warning(f"默认值配置文件不存在，使用内置默认值: {path}")
        return Defaults()
    except json.JSONDecodeError as e:
        logger.error(f"解析默认值配置文件失败: {e}")
        return Defaults()

    if not isinstance(data, dict):
        logger.error(f"默认值配置文件必须是 JSON 对象: {path}")
        return Defaults()

    known = {f.name: f for f in fields(Defaults)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        logger.warning(f"忽略未知配置项: {', '.join(unknown)}")

    values = {}
    for key, value in data.items():
        if key in known:
            coerced = _coerce(known[key], value)
            if coerced is not None:
                values[key] = coerced

    defaults = replace(Defaults(), **values)
    logger.info(f"成功加载默认值配置: {path}")
    return defaults


def resolve_seed(flag_seed: Optional[int], defaults: Defaults) -> int:
    """
    确定蒙特卡洛种子

    优先级：命令行 --seed > 环境变量 PROPINT_SEED > 配置文件
    """
    if flag_seed is not None:
        return flag_seed
    env_seed = os.getenv(SEED_ENV)
    if env_seed:
        try:
            return int(env_seed)
        except ValueError:
            raise DomainError(f"{SEED_ENV} 不是整数: {env_seed}")
    return int(defaults.seed)


def resolve_log_level(defaults: Defaults, verbose: bool = False) -> str:
    """日志级别：--verbose > PROPINT_LOG_LEVEL > 配置文件"""
    if verbose:
        return "INFO"
    return (os.getenv(LOG_LEVEL_ENV) or defaults.log_level).upper()


def resolve_log_dir() -> Optional[str]:
    """PROPINT_LOG_DIR 指向已存在的目录时返回该目录"""
    log_dir = os.getenv(LOG_DIR_ENV)
    if log_dir and os.path.isdir(log_dir):
        return log_dir
    return None
