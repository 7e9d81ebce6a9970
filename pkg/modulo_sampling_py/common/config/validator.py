"""
配置与文档验证器模块
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Set, Tuple

from jsonschema import ValidationError, validate

logger = logging.getLogger(__name__)


class ConfigValidator(ABC):
    """验证器基类"""

    @abstractmethod
    def validate(self, config: Dict[str, Any]) -> bool:
        """
        验证字典

        Raises:
            ValidationError: 验证失败时抛出
        """
        pass


class JSONSchemaValidator(ConfigValidator):
    """JSON Schema验证器"""

    def __init__(self, schema: Dict[str, Any]):
        self.schema = schema

    def validate(self, config: Dict[str, Any]) -> bool:
        try:
            validate(instance=config, schema=self.schema)
            return True
        except ValidationError as e:
            logger.error(f"文档验证失败: {e.message}")
            raise


class ValidationRule(ABC):
    """验证规则基类"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def validate(self, config: Dict[str, Any]) -> bool:
        pass

    @abstractmethod
    def get_error_message(self, config: Dict[str, Any]) -> str:
        """描述未通过的字段"""
        pass


class RuleBasedValidator(ConfigValidator):
    """基于规则的验证器"""

    def __init__(self, section: Optional[str] = None):
        """
        Args:
            section: 只验证该节, None 表示整个字典
        """
        self.section = section
        self._rules: List[ValidationRule] = []

    def add_rule(self, rule: ValidationRule) -> 'RuleBasedValidator':
        self._rules.append(rule)
        return self

    def validate(self, config: Dict[str, Any]) -> bool:
        target = config if self.section is None else config.get(self.section, {})
        for rule in self._rules:
            if not rule.validate(target):
                message = rule.get_error_message(target)
                raise ValidationError(f"规则验证失败: {rule.name}: {message}")
        return True


class RequiredFieldsRule(ValidationRule):
    """必填字段规则, None 视为缺失"""

    def __init__(self, fields: Set[str]):
        super().__init__("必填字段规则")
        self.fields = fields

    def _missing(self, config: Dict[str, Any]) -> List[str]:
        return sorted(f for f in self.fields if config.get(f) is None)

    def validate(self, config: Dict[str, Any]) -> bool:
        return not self._missing(config)

    def get_error_message(self, config: Dict[str, Any]) -> str:
        return f"缺少字段: {', '.join(self._missing(config))}"


def _type_name(expected) -> str:
    if isinstance(expected, tuple):
        return "/".join(t.__name__ for t in expected)
    return expected.__name__


class TypeCheckRule(ValidationRule):
    """类型检查规则"""

    def __init__(self, type_map: Dict[str, Any]):
        super().__init__("类型检查规则")
        self.type_map = type_map

    def _wrong(self, config: Dict[str, Any]) -> List[Tuple[str, str, str]]:
        wrong = []
        for name, expected in self.type_map.items():
            if name not in config:
                continue
            value = config[name]
            expected_name = _type_name(expected)
            # bool 是 int 的子类, 数值字段不接受 bool
            if isinstance(value, bool) and expected is not bool:
                wrong.append((name, type(value).__name__, expected_name))
            elif not isinstance(value, expected):
                wrong.append((name, type(value).__name__, expected_name))
        return wrong

    def validate(self, config: Dict[str, Any]) -> bool:
        return not self._wrong(config)

    def get_error_message(self, config: Dict[str, Any]) -> str:
        return "; ".join(
            f"{name}: 实际为{actual}, 应为{expected}"
            for name, actual, expected in self._wrong(config)
        )


class RangeCheckRule(ValidationRule):
    """范围检查规则, 边界为 None 表示不限"""

    def __init__(self, ranges: Dict[str, Tuple[Optional[float], Optional[float]]]):
        super().__init__("范围检查规则")
        self.ranges = ranges

    def _outside(self, config: Dict[str, Any]) -> List[str]:
        outside = []
        for name, (lo, hi) in self.ranges.items():
            if name not in config:
                continue
            value = config[name]
            if (lo is not None and value < lo) or (hi is not None and value > hi):
                outside.append(name)
        return outside

    def validate(self, config: Dict[str, Any]) -> bool:
        return not self._outside(config)

    def get_error_message(self, config: Dict[str, Any]) -> str:
        return "; ".join(
            f"{name}={config[name]} 超出 {self.ranges[name]}"
            for name in self._outside(config)
        )
