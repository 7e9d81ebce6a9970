"""
ModSampling 数据格式包
"""

from .base import FilterKind, SampleStream, SignalSpec, TrialReport
from .schema import SAMPLE_STREAM_SCHEMA, SIGNAL_SPEC_SCHEMA, TRIAL_REPORT_SCHEMA

__all__ = [
    'FilterKind',
    'SampleStream',
    'SignalSpec',
    'TrialReport',
    'SAMPLE_STREAM_SCHEMA',
    'SIGNAL_SPEC_SCHEMA',
    'TRIAL_REPORT_SCHEMA'
]
