import pytest

from config.settings_loader import load_settings
from src.domain.models.errors import ArgumentError, ConfigError
from src.infrastructure.config.lab_config import DEFAULT_SEED


def test_defaults_when_environment_is_empty():
    settings = load_settings(env={})
    assert settings.seed == DEFAULT_SEED
    assert settings.euler_step == 1e-3
    assert settings.threads == 0
    assert settings.batch_size == 512
    assert settings.log_level == "INFO"


def test_values_are_read_from_environment():
    settings = load_settings(env={
        "ERGODIC_LAB_SEED": "42",
        "ERGODIC_LAB_EULER_STEP": "0.01",
        "ERGODIC_LAB_THREADS": " 4 ",
        "ERGODIC_LAB_LOG_LEVEL": "debug",
    })
    assert (settings.seed, settings.euler_step, settings.threads) == (42, 0.01, 4)
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "key, value",
    [
        ("ERGODIC_LAB_SEED", "abc"),
        ("ERGODIC_LAB_EULER_STEP", "-1"),
        ("ERGODIC_LAB_THREADS", "-2"),
        ("ERGODIC_LAB_BATCH_SIZE", "0"),
        ("ERGODIC_LAB_LOG_LEVEL", "LOUD"),
    ],
)
def test_invalid_values_raise_config_error(key, value):
    with pytest.raises(ConfigError) as info:
        load_settings(env={key: value})
    assert info.value.key == key
    assert isinstance(info.value, ArgumentError)
