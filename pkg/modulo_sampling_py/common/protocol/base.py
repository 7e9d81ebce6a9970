"""
ModSampling 数据交换格式定义
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..errors import InvalidArgumentError, OutOfRangeError


def _num(value) -> Optional[float]:
    """mpf/float 统一转为 JSON 可写的 float"""
    return None if value is None else float(value)


class FilterKind(Enum):
    """预测滤波器类型"""
    CHEBYSHEV = "chebyshev"    # 切比雪夫预测滤波器
    DIFFERENCE = "difference"  # (1 - z)^L 差分基线


@dataclass(frozen=True)
class SignalSpec:
    """有限 sinc 混合信号 x(t) = Σ c_k·sinc(2w0(t - τ_k))"""
    w0: float                   # 内带宽(Hz)
    w: float                    # 声明的类带宽 W(Hz)
    amps: Tuple[float, ...]     # 幅度 c_k
    centers: Tuple[float, ...]  # 中心 τ_k(秒), 位于 1/(2w0) 网格上
    energy_e: float             # 能量 E
    tail_t0: float              # 尾部起点 T0
    tail_rho: float = 1.0       # 尾部衰减指数 ρ

    def __post_init__(self):
        object.__setattr__(self, 'amps', tuple(self.amps))
        object.__setattr__(self, 'centers', tuple(self.centers))
        if len(self.amps) != len(self.centers) or not self.amps:
            raise InvalidArgumentError("幅度与中心必须等长且非空")
        if not 0 < self.w0 < self.w:
            raise InvalidArgumentError(f"内带宽必须满足 0 < w0 < W: {self.w0}, {self.w}")

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'w0': self.w0,
            'w': self.w,
            'amps': list(self.amps),
            'centers': list(self.centers),
            'energy_e': self.energy_e,
            'tail_t0': self.tail_t0,
            'tail_rho': self.tail_rho
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SignalSpec':
        """从字典创建信号描述"""
        return cls(
            w0=data['w0'],
            w=data['w'],
            amps=data['amps'],
            centers=data['centers'],
            energy_e=data['energy_e'],
            tail_t0=data['tail_t0'],
            tail_rho=data.get('tail_rho', 1.0)
        )


@dataclass(frozen=True)
class SampleStream:
    """下标从 start_index 开始的连续样本块"""
    start_index: int
    samples: Tuple[Any, ...]              # float 或 mpf
    ts: float                             # 采样周期 T_s
    folded_delta: Optional[float] = None  # 非空表示样本已模约化

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(self.samples))
        if not self.ts > 0:
            raise InvalidArgumentError(f"采样周期必须为正: {self.ts}")
        if self.folded_delta is not None:
            half = self.folded_delta / 2
            for offset, value in enumerate(self.samples):
                if not -half <= value < half:
                    raise InvalidArgumentError(
                        f"折叠样本越界: n={self.start_index + offset}, 值={float(value)}"
                    )

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def end_index(self) -> int:
        """最后一个样本的下标"""
        return self.start_index + len(self.samples) - 1

    @property
    def is_folded(self) -> bool:
        return self.folded_delta is not None

    def indices(self) -> range:
        return range(self.start_index, self.end_index + 1)

    def value_at(self, n: int):
        """取下标 n 的样本"""
        return self.window(n, n)[0]

    def window(self, n_lo: int, n_hi: int) -> List[Any]:
        """
        取下标 [n_lo, n_hi] 的样本

        Raises:
            OutOfRangeError: 范围超出样本流
        """
        missing = [
            n for n in range(n_lo, n_hi + 1)
            if n < self.start_index or n > self.end_index
        ]
        if missing:
            raise OutOfRangeError(
                f"样本流仅覆盖 [{self.start_index}, {self.end_index}]", missing
            )
        lo = n_lo - self.start_index
        return list(self.samples[lo:lo + n_hi - n_lo + 1])

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        samples = [float(v) for v in self.samples]
        if self.folded_delta is not None:
            # 略小于 Δ/2 的 mpf 可能舍入到 Δ/2, 按 [-Δ/2, Δ/2) 重新约化
            half = self.folded_delta / 2
            samples = [v - self.folded_delta if v >= half else v for v in samples]
        return {
            'start_index': self.start_index,
            'samples': samples,
            'ts': self.ts,
            'folded_delta': self.folded_delta
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SampleStream':
        """从字典创建样本流"""
        return cls(
            start_index=data['start_index'],
            samples=data['samples'],
            ts=data['ts'],
            folded_delta=data.get('folded_delta')
        )


@dataclass
class TrialReport:
    """单次恢复试验结果"""
    config: Dict[str, Any]                      # RecoveryConfig 回显
    kind: FilterKind
    order: int                                  # 切比雪夫为 K, 差分为 L
    max_pred_error: float                       # 观测到的 max|e*_n|
    success: bool
    n_start: int
    n_end: int
    max_recovery_error: Optional[float] = None  # 与真值比较的 max|x̂_n - x_n|
    near_boundary_count: int = 0                # |e*_n| ≥ (Δ/2)(1-margin) 的步数
    error_bound: Optional[float] = None         # 滤波器保证的 |e_n| 上界
    true_pred_error: Optional[float] = None     # 真实样本上的 max|e_n|
    degenerate_order: bool = False              # √(32WE) ≤ Δ, 误差界与阶数无关
    noise_amplitude: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'config': dict(self.config),
            'kind': self.kind.value,
            'order': self.order,
            'max_pred_error': _num(self.max_pred_error),
            'max_recovery_error': _num(self.max_recovery_error),
            'success': self.success,
            'n_start': self.n_start,
            'n_end': self.n_end,
            'near_boundary_count': self.near_boundary_count,
            'error_bound': _num(self.error_bound),
            'true_pred_error': _num(self.true_pred_error),
            'degenerate_order': self.degenerate_order,
            'noise_amplitude': _num(self.noise_amplitude),
            'warnings': list(self.warnings)
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TrialReport':
        """从字典创建试验报告"""
        return cls(
            config=data['config'],
            kind=FilterKind(data['kind']),
            order=data['order'],
            max_pred_error=data['max_pred_error'],
            success=data['success'],
            n_start=data['n_start'],
            n_end=data['n_end'],
            max_recovery_error=data.get('max_recovery_error'),
            near_boundary_count=data.get('near_boundary_count', 0),
            error_bound=data.get('error_bound'),
            true_pred_error=data.get('true_pred_error'),
            degenerate_order=data.get('degenerate_order', False),
            noise_amplitude=data.get('noise_amplitude', 0.0),
            warnings=list(data.get('warnings', []))
        )

