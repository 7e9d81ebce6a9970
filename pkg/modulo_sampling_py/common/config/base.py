"""
配置基类模块
"""
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..errors import InfeasibleRateError, InvalidArgumentError

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    """配置错误"""
    pass


@dataclass
class RecoveryConfig:
    """恢复参数: 信号类参数、模数与采样周期"""

    w: float                # 类带宽 W(Hz)
    energy_e: float         # 能量上界 E
    tail_t0: float          # 尾部起点 T0
    tail_rho: float         # 尾部衰减指数 ρ
    delta: float            # 模数 Δ
    ts: float               # 采样周期 T_s
    margin: float = 1e-3    # 安全裕量

    @property
    def wts(self) -> float:
        """归一化带宽 W·T_s"""
        return self.w * self.ts

    def validate(self) -> 'RecoveryConfig':
        """
        检查参数有效性

        Raises:
            InvalidArgumentError: 参数非正或裕量越界
            InfeasibleRateError: W·T_s ≥ 1/2
        """
        for name in ('w', 'energy_e', 'tail_t0', 'tail_rho', 'delta', 'ts'):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidArgumentError(f"参数 {name} 必须为正: {value}")
        if not 0 <= self.margin < 1:
            raise InvalidArgumentError(f"安全裕量必须位于[0, 1): {self.margin}")
        if self.wts >= 0.5:
            raise InfeasibleRateError(
                f"采样率不高于奈奎斯特率: W·T_s = {self.wts} ≥ 1/2"
            )
        return self

    @classmethod
    def from_signal(
        cls,
        spec,
        delta: float,
        ts: float,
        margin: float = 1e-3,
        energy_e: Optional[float] = None
    ) -> 'RecoveryConfig':
        """
        由信号描述生成恢复参数

        Args:
            spec: SignalSpec
            delta: 模数
            ts: 采样周期
            margin: 安全裕量
            energy_e: 覆盖信号自身能量的类能量上界
        """
        return cls(
            w=spec.w,
            energy_e=spec.energy_e if energy_e is None else energy_e,
            tail_t0=spec.tail_t0,
            tail_rho=spec.tail_rho,
            delta=delta,
            ts=ts,
            margin=margin
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RecoveryConfig':
        return cls(**{k: data[k] for k in cls.__dataclass_fields__ if k in data})


@dataclass
class LogConfig:
    """日志配置类"""

    level: str = "INFO"
    file_enabled: bool = False
    file_path: str = "logs/modsampling.log"
    max_size: int = 10 * 1024 * 1024  # 10MB
    backup_count: int = 5
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass
class HarnessConfig:
    """实验运行配置"""

    w: float = 1.0                      # 生成信号的类带宽
    energy: float = 1.0                 # 能量预算
    terms: int = 8                      # sinc 项数
    margin: float = 1e-3
    success_tolerance: float = 1e-6     # 成功判据: max|x̂ - x| ≤ tol·Δ
    interpolation_window: int = 2000
    grid_points: int = 4097             # 滤波器构造时带内自检的网格点数
    headroom_digits: int = 15
    max_workers: int = 1
    log: LogConfig = field(default_factory=LogConfig)

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> 'HarnessConfig':
        """
        从分节配置字典创建

        Args:
            config: 含 signal/recovery/interpolation/sweep/logging 各节的字典
        """
        signal = config.get('signal', {})
        recovery = config.get('recovery', {})
        interpolation = config.get('interpolation', {})
        sweep = config.get('sweep', {})
        logging_section = config.get('logging', {})
        defaults = cls()
        return cls(
            w=signal.get('w', defaults.w),
            energy=signal.get('energy', defaults.energy),
            terms=signal.get('terms', defaults.terms),
            margin=recovery.get('margin', defaults.margin),
            success_tolerance=recovery.get(
                'success_tolerance', defaults.success_tolerance
            ),
            interpolation_window=interpolation.get(
                'window', defaults.interpolation_window
            ),
            grid_points=recovery.get('grid_points', defaults.grid_points),
            headroom_digits=recovery.get('headroom_digits', defaults.headroom_digits),
            max_workers=sweep.get('max_workers', defaults.max_workers),
            log=LogConfig(**logging_section)
        )


class ConfigManager:
    """配置管理器: 按扩展名选择加载器, 加载后校验"""

    def __init__(self, file_path: Union[str, Path], validator=None):
        """
        初始化配置管理器

        Args:
            file_path: 配置文件路径(.json/.yml/.yaml)
            validator: 可选的 ConfigValidator

        Raises:
            ConfigError: 文件类型不支持或校验失败
        """
        from .loader import loader_for

        self.file_path = Path(file_path)
        self.validator = validator
        self.loader = loader_for(self.file_path)
        self._config: Dict[str, Any] = {}
        self.reload()

    def reload(self):
        """重新加载配置文件"""
        try:
            config = self.loader.load(self.file_path) or {}
        except Exception as e:
            raise ConfigError(f"加载配置失败: {self.file_path}: {e}") from e
        if self.validator is not None:
            try:
                self.validator.validate(config)
            except Exception as e:
                raise ConfigError(f"配置校验失败: {e}") from e
        self._config = config
        logger.debug(f"已加载配置: {self.file_path}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        按点分路径取值, 例如 "recovery.margin"
        """
        node: Any = self._config
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any):
        """设置值并写回文件"""
        parts = key.split('.')
        node = self._config
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value
        self.loader.save(self._config, self.file_path)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self._config)
