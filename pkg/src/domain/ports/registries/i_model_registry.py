# src/domain/ports/registries/i_model_registry.py

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Mapping, Sequence, Tuple

import numpy as np

from src.domain.models.diffusion import DiffusionModel
from src.domain.models.function_class import TestFunction
from src.domain.models.langevin import Potential
from src.domain.models.lasso import Dictionary


class IModelRegistry(ABC):
    """
    İsimle kayıtlı difüzyon modelleri, potansiyeller ve test fonksiyonları.

        - BuiltinModelRegistry → yerleşik katalog        (gerçek senaryo)
        - FakeModelRegistry    → tek modelli, unit test   (test senaryosu)

    Parametreler her fabrikaya anahtar-değer olarak iletilir; bilinmeyen isim veya
    parametre ArgumentError ile reddedilir.
    """

    @abstractmethod
    def model_names(self) -> Sequence[str]:
        raise NotImplementedError

    @abstractmethod
    def get_model(self, name: str, params: Mapping[str, Any] | None = None) -> DiffusionModel:
        raise NotImplementedError

    @abstractmethod
    def get_potential(self, name: str, params: Mapping[str, Any] | None = None) -> Potential:
        raise NotImplementedError

    @abstractmethod
    def get_function(self, name: str, params: Mapping[str, Any] | None = None) -> TestFunction:
        raise NotImplementedError

    @abstractmethod
    def lasso_model_names(self) -> Sequence[str]:
        """Bilinen seyrek drift parametresi (theta0) olan modeller."""
        raise NotImplementedError

    @abstractmethod
    def get_lasso_setup(
        self, name: str, params: Mapping[str, Any] | None = None
    ) -> Tuple[DiffusionModel, Dictionary, np.ndarray]:
        """(model, sözlük, theta0); b_{theta0} modelin drifti ile aynıdır."""
        raise NotImplementedError
