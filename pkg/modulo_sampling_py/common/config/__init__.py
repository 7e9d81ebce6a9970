"""
配置管理包
"""
from .base import (
    ConfigError,
    ConfigManager,
    HarnessConfig,
    LogConfig,
    RecoveryConfig
)
from .harness import HarnessConfigValidator, load_harness_config
from .loader import (
    ConfigLoader,
    JSONConfigLoader,
    YAMLConfigLoader,
    loader_for
)
from .validator import (
    ConfigValidator,
    JSONSchemaValidator,
    RuleBasedValidator,
    ValidationRule,
    RequiredFieldsRule,
    TypeCheckRule,
    RangeCheckRule
)

__all__ = [
    # 配置类
    'ConfigError',
    'ConfigManager',
    'HarnessConfig',
    'LogConfig',
    'RecoveryConfig',
    'HarnessConfigValidator',
    'load_harness_config',

    # 加载器
    'ConfigLoader',
    'JSONConfigLoader',
    'YAMLConfigLoader',
    'loader_for',

    # 验证器
    'ConfigValidator',
    'JSONSchemaValidator',
    'RuleBasedValidator',
    'ValidationRule',
    'RequiredFieldsRule',
    'TypeCheckRule',
    'RangeCheckRule'
]
