"""
ModSampling 实验运行包: 单次试验、参数扫描与命令行入口
"""

from .experiments import SweepRow, SweepSpec, run_sweep, run_trial
from .results import (
    SWEEP_CSV_HEADER,
    load_signal,
    load_stream,
    save_document,
    write_sweep_csv
)

__all__ = [
    'SweepRow',
    'SweepSpec',
    'run_sweep',
    'run_trial',
    'SWEEP_CSV_HEADER',
    'load_signal',
    'load_stream',
    'save_document',
    'write_sweep_csv'
]
