"""
配置与结果文档加载器模块
"""
import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Union

import yaml

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ConfigLoader(ABC):
    """配置加载器基类"""

    @abstractmethod
    def load(self, file_path: PathLike) -> Dict[str, Any]:
        """
        加载文件

        Args:
            file_path: 文件路径

        Returns:
            字典
        """
        pass

    @abstractmethod
    def save(self, config: Dict[str, Any], file_path: PathLike):
        """
        保存文件, 自动创建父目录

        Args:
            config: 字典
            file_path: 文件路径
        """
        pass


def _ensure_parent(file_path: PathLike) -> Path:
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


class JSONConfigLoader(ConfigLoader):
    """JSON 加载器, 也用于信号描述、样本流与试验报告"""

    def load(self, file_path: PathLike) -> Dict[str, Any]:
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except Exception as e:
            logger.error(f"加载JSON文件失败: {file_path}: {e}")
            raise

    def save(self, config: Dict[str, Any], file_path: PathLike):
        # 固定键序与缩进, 同一输入得到逐字节相同的文件
        try:
            path = _ensure_parent(file_path)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                json.dump(config, f, indent=2, sort_keys=True, ensure_ascii=False)
                f.write("\n")
        except Exception as e:
            logger.error(f"保存JSON文件失败: {file_path}: {e}")
            raise


class YAMLConfigLoader(ConfigLoader):
    """YAML 配置加载器"""

    def load(self, file_path: PathLike) -> Dict[str, Any]:
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return yaml.safe_load(f)
        except Exception as e:
            logger.error(f"加载YAML配置文件失败: {file_path}: {e}")
            raise

    def save(self, config: Dict[str, Any], file_path: PathLike):
        try:
            path = _ensure_parent(file_path)
            with open(path, "w", encoding="utf-8") as f:
                yaml.safe_dump(config, f, indent=2, allow_unicode=True)
        except Exception as e:
            logger.error(f"保存YAML配置文件失败: {file_path}: {e}")
            raise


_LOADERS = {
    '.json': JSONConfigLoader,
    '.yml': YAMLConfigLoader,
    '.yaml': YAMLConfigLoader
}


def loader_for(file_path: PathLike) -> ConfigLoader:
    """
    按扩展名选择加载器

    Raises:
        ConfigError: 不支持的扩展名
    """
    from .base import ConfigError

    suffix = Path(file_path).suffix.lower()
    if suffix not in _LOADERS:
        raise ConfigError(f"不支持的文件类型: {suffix or file_path}")
    return _LOADERS[suffix]()
