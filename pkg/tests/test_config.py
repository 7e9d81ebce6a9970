"""
配置管理模块测试
"""
import json
from pathlib import Path
from typing import Any, Dict

import pytest
import yaml

from modulo_sampling_py.common.config import (
    ConfigError,
    ConfigManager,
    ConfigValidator,
    HarnessConfig,
    JSONConfigLoader,
    RecoveryConfig,
    YAMLConfigLoader,
    load_harness_config,
    loader_for
)
from modulo_sampling_py.common.errors import InfeasibleRateError, InvalidArgumentError

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent / "config" / "default.yml"


class KeyPresentValidator(ConfigValidator):
    """测试用验证器"""
    def validate(self, config: Dict[str, Any]) -> bool:
        if 'recovery' not in config:
            raise ValueError("缺少 recovery 节")
        return True


@pytest.fixture
def json_config_file(tmp_path):
    """创建测试用JSON配置文件"""
    config_file = tmp_path / "test_config.json"
    with open(config_file, 'w', encoding='utf-8') as f:
        json.dump({"recovery": {"margin": 0.001}}, f)
    return config_file


@pytest.fixture
def yaml_config_file(tmp_path):
    """创建测试用YAML配置文件"""
    config_file = tmp_path / "test_config.yml"
    with open(config_file, 'w', encoding='utf-8') as f:
        yaml.dump({"recovery": {"margin": 0.001}}, f)
    return config_file


def test_json_config_loader(json_config_file):
    """测试JSON配置加载器"""
    loader = JSONConfigLoader()
    config = loader.load(json_config_file)
    assert config["recovery"]["margin"] == 0.001

    loader.save({"b": 1, "a": [0.1, 2]}, json_config_file)
    assert loader.load(json_config_file) == {"a": [0.1, 2], "b": 1}


def test_json_save_is_deterministic(tmp_path):
    """同一字典两次保存逐字节相同"""
    loader = JSONConfigLoader()
    document = {"z": 0.30000000000000004, "a": {"y": 1, "x": -2.5e-17}}
    loader.save(document, tmp_path / "one.json")
    loader.save(dict(reversed(list(document.items()))), tmp_path / "two.json")
    one = (tmp_path / "one.json").read_bytes()
    assert one == (tmp_path / "two.json").read_bytes()
    assert b"\r\n" not in one
    assert json.loads(one)["z"] == 0.30000000000000004


def test_yaml_config_loader(yaml_config_file):
    """测试YAML配置加载器"""
    loader = YAMLConfigLoader()
    config = loader.load(yaml_config_file)
    assert config["recovery"]["margin"] == 0.001

    loader.save({"new_key": "new_value"}, yaml_config_file)
    assert loader.load(yaml_config_file)["new_key"] == "new_value"


def test_config_manager_json(json_config_file):
    """测试JSON配置管理器"""
    manager = ConfigManager(json_config_file, validator=KeyPresentValidator())

    assert manager.get("recovery.margin") == 0.001
    assert manager.get("recovery.non_exist", "default") == "default"

    manager.set("sweep.max_workers", 2)
    assert manager.get("sweep.max_workers") == 2

    manager.reload()
    assert manager.get("sweep.max_workers") == 2


def test_config_manager_yaml(yaml_config_file):
    """测试YAML配置管理器"""
    manager = ConfigManager(yaml_config_file, validator=KeyPresentValidator())
    assert manager.get("recovery.margin") == 0.001

    manager.set("interpolation.window", 500)
    manager.reload()
    assert manager.get("interpolation.window") == 500


def test_config_validation(tmp_path):
    """测试配置验证"""
    config_file = tmp_path / "invalid.json"
    config_file.write_text(json.dumps({"signal": {}}), encoding='utf-8')

    with pytest.raises(ConfigError):
        ConfigManager(config_file, validator=KeyPresentValidator())


def test_unsupported_config_type(tmp_path):
    """测试不支持的配置文件类型"""
    config_file = tmp_path / "test.txt"
    config_file.touch()

    with pytest.raises(ConfigError):
        ConfigManager(config_file)
    with pytest.raises(ConfigError):
        loader_for(config_file)


def test_default_config_file_matches_builtin_defaults():
    """config/default.yml 与内置默认值一致"""
    loaded = load_harness_config(DEFAULT_CONFIG)
    assert loaded == HarnessConfig()


def test_load_harness_config_without_path():
    assert load_harness_config(None) == HarnessConfig()


def test_harness_config_from_sections(tmp_path):
    """各节字段映射到 HarnessConfig"""
    config_file = tmp_path / "run.yml"
    YAMLConfigLoader().save({
        "signal": {"w": 2.0, "terms": 4},
        "recovery": {"margin": 0.01, "headroom_digits": 20},
        "sweep": {"max_workers": 3},
        "logging": {"level": "DEBUG", "file_enabled": True}
    }, config_file)

    config = load_harness_config(config_file)
    assert config.w == 2.0
    assert config.terms == 4
    assert config.energy == 1.0
    assert config.margin == 0.01
    assert config.headroom_digits == 20
    assert config.max_workers == 3
    assert config.log.level == "DEBUG"
    assert config.log.file_enabled


@pytest.mark.parametrize("document", [
    {"signal": {"terms": 0}, "recovery": {"margin": 0.001}},
    {"signal": {"w": "1"}, "recovery": {"margin": 0.001}},
    {"recovery": {"margin": 0.9}},
    {"recovery": {}},
    {"recovery": {"margin": 0.001}, "network": {"port": 8080}},
    {"recovery": {"margin": 0.001}, "sweep": {"max_workers": 0}}
])
def test_harness_config_rejects_invalid(tmp_path, document):
    """无效运行配置抛出 ConfigError"""
    config_file = tmp_path / "bad.json"
    JSONConfigLoader().save(document, config_file)
    with pytest.raises(ConfigError):
        load_harness_config(config_file)


def test_recovery_config_validate():
    """恢复参数校验"""
    config = RecoveryConfig(w=1.0, energy_e=1.0, tail_t0=10.0, tail_rho=1.0,
                            delta=0.1, ts=0.25)
    assert config.validate() is config
    assert config.wts == 0.25

    with pytest.raises(InfeasibleRateError):
        RecoveryConfig(w=1.0, energy_e=1.0, tail_t0=10.0, tail_rho=1.0,
                       delta=0.1, ts=0.5).validate()
    with pytest.raises(InvalidArgumentError):
        RecoveryConfig(w=1.0, energy_e=0.0, tail_t0=10.0, tail_rho=1.0,
                       delta=0.1, ts=0.25).validate()
    with pytest.raises(InvalidArgumentError):
        RecoveryConfig(w=1.0, energy_e=1.0, tail_t0=10.0, tail_rho=1.0,
                       delta=0.1, ts=0.25, margin=1.0).validate()


def test_recovery_config_dict_roundtrip():
    config = RecoveryConfig(w=1.0, energy_e=0.5, tail_t0=3.0, tail_rho=1.0,
                            delta=0.1, ts=0.25, margin=0.01)
    assert RecoveryConfig.from_dict(config.to_dict()) == config
