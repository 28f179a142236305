# config/settings_loader.py

from __future__ import annotations

import logging
import os
import sys
from typing import Callable, Mapping, Optional, TypeVar

from dotenv import load_dotenv

from src.domain.models.errors import ConfigError
from src.infrastructure.config.lab_config import DEFAULT_SEED, LabSettings

T = TypeVar("T")

_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


def _read(env: Mapping[str, str], key: str, default: T, cast: Callable[[str], T]) -> T:
    raw = env.get(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as exc:
        raise ConfigError(key, f"geçersiz değer '{raw}'") from exc


def load_settings(env: Optional[Mapping[str, str]] = None, use_dotenv: bool = True) -> LabSettings:
    """
    .env dosyasını ve ortam değişkenlerini okuyarak LabSettings nesnesi oluşturur.

    env verilirse (testler) yalnızca o sözlük kullanılır.
    """
    if env is None:
        if use_dotenv:
            load_dotenv()  # .env otomatik yukarıya doğru taranır
            if getattr(sys, "frozen", False):
                base_path = os.path.dirname(os.path.dirname(__file__))
                env_path = os.path.join(base_path, ".env")
                if os.path.exists(env_path):
                    load_dotenv(env_path)
        env = os.environ

    seed = _read(env, "ERGODIC_LAB_SEED", DEFAULT_SEED, int)
    euler_step = _read(env, "ERGODIC_LAB_EULER_STEP", 1e-3, float)
    threads = _read(env, "ERGODIC_LAB_THREADS", 0, int)
    batch_size = _read(env, "ERGODIC_LAB_BATCH_SIZE", 512, int)
    log_dir = _read(env, "ERGODIC_LAB_LOG_DIR", "logs", str)
    log_level = _read(env, "ERGODIC_LAB_LOG_LEVEL", "INFO", str).upper()

    if not euler_step > 0:
        raise ConfigError("ERGODIC_LAB_EULER_STEP", "pozitif olmalı")
    if threads < 0:
        raise ConfigError("ERGODIC_LAB_THREADS", "negatif olamaz")
    if batch_size < 1:
        raise ConfigError("ERGODIC_LAB_BATCH_SIZE", "en az 1 olmalı")
    if log_level not in _LOG_LEVELS:
        raise ConfigError("ERGODIC_LAB_LOG_LEVEL", f"bilinmeyen seviye '{log_level}'")

    settings = LabSettings(
        seed=seed,
        euler_step=euler_step,
        threads=threads,
        batch_size=batch_size,
        log_dir=log_dir,
        log_level=log_level,
    )
    logging.getLogger(__name__).debug("Ayarlar yüklendi: %s", settings)
    return settings
