# src/infrastructure/config/lab_config.py

from __future__ import annotations

from dataclasses import asdict, dataclass

DEFAULT_SEED = 20240501


@dataclass(frozen=True)
class LabSettings:
    seed: int = DEFAULT_SEED
    euler_step: float = 1e-3
    threads: int = 0          # 0 = otomatik
    batch_size: int = 512     # vektörize partideki replika sayısı
    log_dir: str = "logs"
    log_level: str = "INFO"

    def to_dict(self) -> dict:
        return asdict(self)

ARTIFACT_VERSION = "ergodic-lab 1.0.0"
