import os
import sys
from pathlib import Path

import pytest

# Testlerin 'src' modülünü kolayca görebilmesi için proje kök dizinini PYTHONPATH'e ekliyoruz.
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from config.settings_loader import load_settings  # noqa: E402
from src.application.services.registry.model_registry import ou_model  # noqa: E402
from src.application.services.simulation.simulation_service import SimulationService  # noqa: E402
from src.domain.ports.services.i_result_writer import IResultWriter  # noqa: E402


class FakeResultWriter(IResultWriter):
    """Dosya sistemine dokunmadan yazılan tabloları ve raporları bellekte tutar."""

    def __init__(self):
        self.tables = []
        self.reports = []

    def write_table(self, path, columns, rows, metadata=None):
        self.tables.append({"path": Path(path), "columns": list(columns), "rows": [list(r) for r in rows],
                            "metadata": dict(metadata or {})})
        return Path(path)

    def write_report(self, path, payload):
        self.reports.append({"path": Path(path), "payload": dict(payload)})
        return Path(path)


@pytest.fixture
def settings():
    # Ortamdan bağımsız, sabit ayarlar
    return load_settings(env={})


@pytest.fixture
def ou():
    return ou_model(1)


@pytest.fixture
def simulation():
    return SimulationService(euler_step=1e-2, batch_size=64, threads=1)


@pytest.fixture
def fake_writer():
    return FakeResultWriter()
