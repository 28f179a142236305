# src/application/container.py

from __future__ import annotations

from typing import Optional

from config.settings_loader import load_settings
from src.application.services.analysis.poisson_service import PoissonService
from src.application.services.concentration.concentration_service import ConcentrationLabService
from src.application.services.langevin.langevin_service import LangevinService
from src.application.services.lasso.lasso_service import LassoService
from src.application.services.registry.model_registry import BuiltinModelRegistry
from src.application.services.simulation.simulation_service import SimulationService
from src.domain.ports.registries.i_model_registry import IModelRegistry
from src.domain.ports.services.i_result_writer import IResultWriter
from src.infrastructure.config.lab_config import LabSettings
from src.infrastructure.reporting.csv_json_result_writer import CsvJsonResultWriter


class AppContainer:
    """
    Dependency Injection Konteyneri.
    Uygulamanın ihtiyaç duyduğu registry, yazıcı ve servisleri tek bir noktada başlatıp tutar.
    Testler settings / writer / registry için sahte nesne verebilir.
    """
    def __init__(
        self,
        settings: Optional[LabSettings] = None,
        writer: Optional[IResultWriter] = None,
        registry: Optional[IModelRegistry] = None,
        threads: Optional[int] = None,
    ):
        # 1) Ayarlar (.env + ortam)
        self.settings = settings or load_settings()

        # 2) Altyapı: sonuç yazıcısı ve model kataloğu
        self.writer = writer or CsvJsonResultWriter()
        self.registry = registry or BuiltinModelRegistry()

        # 3) Simülasyon çekirdeği
        self.simulation_service = SimulationService(
            euler_step=self.settings.euler_step,
            batch_size=self.settings.batch_size,
            threads=self.settings.threads if threads is None else threads,
        )

        # 4) Servisler
        self.poisson_service = PoissonService(self.simulation_service)
        self.concentration_service = ConcentrationLabService(self.simulation_service)
        self.lasso_service = LassoService(self.simulation_service)
        self.langevin_service = LangevinService(self.simulation_service)
