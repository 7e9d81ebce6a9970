"""
ModSampling 错误定义
"""
from typing import Iterable, List


class ModuloSamplingError(Exception):
    """模数采样错误基类"""
    pass


class InvalidArgumentError(ModuloSamplingError, ValueError):
    """参数无效"""
    pass


class InfeasibleRateError(ModuloSamplingError):
    """采样率不高于奈奎斯特率"""
    pass


class OutOfRangeError(ModuloSamplingError):
    """请求的样本下标超出样本流范围"""

    def __init__(self, message: str, missing: Iterable[int] = ()):
        self.missing: List[int] = list(missing)
        if self.missing:
            lo, hi = self.missing[0], self.missing[-1]
            message = f"{message} (缺失下标 {lo}..{hi}, 共{len(self.missing)}个)"
        super().__init__(message)


class ConsistencyError(ModuloSamplingError):
    """内部一致性检查失败"""
    pass
