"""
结果文档读写: 信号描述、样本流、试验报告 JSON 与扫描 CSV
"""
import csv
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from ..common.config import JSONConfigLoader, JSONSchemaValidator
from ..common.protocol import (
    SAMPLE_STREAM_SCHEMA,
    SIGNAL_SPEC_SCHEMA,
    SampleStream,
    SignalSpec
)
from .experiments import SweepRow

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SWEEP_CSV_HEADER = ['wts', 'delta', 'kind', 'order', 'max_pred_err', 'max_rec_err', 'success']


def _load_validated(file_path: PathLike, schema: Dict[str, Any]) -> Dict[str, Any]:
    data = JSONConfigLoader().load(file_path)
    JSONSchemaValidator(schema).validate(data)
    return data


def load_signal(file_path: PathLike) -> SignalSpec:
    """
    读取信号描述

    Raises:
        ValidationError: 文档结构不符
        InvalidArgumentError: 字段取值无效
    """
    return SignalSpec.from_dict(_load_validated(file_path, SIGNAL_SPEC_SCHEMA))


def load_stream(file_path: PathLike) -> SampleStream:
    """读取样本流"""
    return SampleStream.from_dict(_load_validated(file_path, SAMPLE_STREAM_SCHEMA))


def save_document(document: Any, file_path: PathLike):
    """保存带 to_dict() 的对象或字典, 键序固定"""
    data = document.to_dict() if hasattr(document, 'to_dict') else document
    JSONConfigLoader().save(data, file_path)
    logger.debug(f"已写入: {file_path}")


def _format_number(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return 'nan'
    return format(float(value), '.17g')


def write_sweep_csv(rows: Iterable[SweepRow], file_path: PathLike) -> int:
    """
    写扫描 CSV, 数值保留17位有效数字, 行尾为 LF

    Returns:
        写入的数据行数
    """
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SWEEP_CSV_HEADER)
        for row in rows:
            writer.writerow([
                _format_number(row.wts),
                _format_number(row.delta),
                row.kind.value,
                '' if row.order is None else row.order,
                _format_number(row.max_pred_err),
                _format_number(row.max_rec_err),
                'true' if row.success else 'false'
            ])
            count += 1
    logger.info(f"扫描结果已写入 {path}: {count}行")
    return count
