#!/usr/bin/env python3
"""
结果输出
同一组记录可以输出为文本、JSON 或 CSV
"""

import io
import csv
import json
import math
from typing import Any, Dict, List, Optional

OUTPUT_FORMATS = ("text", "json", "csv")

# CSV 中浮点数保留的有效数字
CSV_SIGNIFICANT_DIGITS = 15


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, f".{CSV_SIGNIFICANT_DIGITS}g")
    return str(value)


def render_json(records: List[Dict], as_table: bool = False) -> str:
    """
    单条记录输出为扁平对象，表格输出为对象列表

    浮点数使用 Python 的最短往返表示，无穷大写为字符串 "inf"
    """
    converted = [{key: _json_value(value) for key, value in record.items()} for record in records]
    if len(converted) == 1 and not as_table:
        return json.dumps(converted[0], ensure_ascii=False)
    return json.dumps(converted, ensure_ascii=False)


def render_csv(records: List[Dict]) -> str:
    """表头一行，之后每条记录一行"""
    if not records:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(records[0].keys()), lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow({key: _csv_value(value) for key, value in record.items()})
    return buffer.getvalue().rstrip("\n")


def format_number(value: float, digits: int = 6) -> str:
    """文本输出的数字格式"""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{digits}f}"


def render_interval_block(confidence: float, description: str, n: float, x_bar: float,
                          lower: float, upper: float, label: Optional[str] = None) -> str:
    """
    置信区间的文本块

        Confidence Interval (CI)

    95.00% CI for proportion for population of size 200
    Interval uses 60 binary data points from data SAMPLE with sample
    proportion = 0.6500

    [0.544302, 0.742768]
    """
    source = f" from data {label}" if label else ""
    size = int(n) if float(n).is_integer() else n
    return "\n".join([
        "    Confidence Interval (CI)",
        "",
        f"{confidence * 100:.2f}% CI for {description}",
        f"Interval uses {size} binary data points{source} with sample",
        f"proportion = {x_bar:.4f}",
        "",
        f"[{format_number(lower)}, {format_number(upper)}]",
    ])


def render_table(header: List[str], rows: List[List[str]]) -> str:
    """按列宽对齐的简单文本表格"""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("-" * len(lines[0]))
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)
