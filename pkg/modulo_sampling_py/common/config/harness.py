"""
实验运行配置的加载与校验
"""
import logging
from pathlib import Path
from typing import Optional, Union

from .base import ConfigManager, HarnessConfig
from .validator import (
    ConfigValidator,
    JSONSchemaValidator,
    RangeCheckRule,
    RequiredFieldsRule,
    RuleBasedValidator,
    TypeCheckRule
)

logger = logging.getLogger(__name__)

_SECTION = {"type": "object"}

HARNESS_CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "signal": _SECTION,
        "recovery": _SECTION,
        "interpolation": _SECTION,
        "sweep": _SECTION,
        "logging": _SECTION
    },
    "additionalProperties": False
}


class HarnessConfigValidator(ConfigValidator):
    """结构校验加各节字段规则"""

    def __init__(self):
        self._validators = [
            JSONSchemaValidator(HARNESS_CONFIG_SCHEMA),
            RuleBasedValidator('signal')
            .add_rule(TypeCheckRule({'w': (int, float), 'energy': (int, float),
                                     'terms': int}))
            .add_rule(RangeCheckRule({'w': (0, None), 'energy': (0, None),
                                      'terms': (1, None)})),
            RuleBasedValidator('recovery')
            .add_rule(RequiredFieldsRule({'margin'}))
            .add_rule(RangeCheckRule({'margin': (0.0, 0.5),
                                      'success_tolerance': (0.0, 1.0),
                                      'grid_points': (2, None),
                                      'headroom_digits': (1, None)})),
            RuleBasedValidator('interpolation')
            .add_rule(RangeCheckRule({'window': (1, None)})),
            RuleBasedValidator('sweep')
            .add_rule(RangeCheckRule({'max_workers': (1, None)}))
        ]

    def validate(self, config) -> bool:
        for validator in self._validators:
            validator.validate(config)
        return True


def load_harness_config(path: Optional[Union[str, Path]] = None) -> HarnessConfig:
    """
    加载实验运行配置

    Args:
        path: YAML/JSON 配置文件, None 时使用内置默认值

    Raises:
        ConfigError: 文件无法加载或校验失败
    """
    if path is None:
        return HarnessConfig()
    manager = ConfigManager(path, validator=HarnessConfigValidator())
    config = HarnessConfig.from_dict(manager.as_dict())
    logger.info(f"使用配置文件: {path}")
    return config
