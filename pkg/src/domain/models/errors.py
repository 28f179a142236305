# src/domain/models/errors.py

from __future__ import annotations

from typing import Any, Optional, Sequence


class ErgodicLabError(Exception):
    """Kütüphanedeki tüm alan (domain) hatalarının ortak tabanı."""


class ArgumentError(ErgodicLabError, ValueError):
    """Bir operasyonun ön koşulu (precondition) ihlal edildiğinde fırlatılır."""


class ConfigError(ArgumentError):
    """
    Konfigürasyon hatası: bilinmeyen anahtar, tip uyuşmazlığı veya aralık ihlali.
    Mesaj her zaman ilgili anahtarı içerir.
    """

    def __init__(self, key: str, message: str) -> None:
        self.key = key
        super().__init__(f"{key}: {message}")


class EvaluationError(ErgodicLabError, ValueError):
    """Drift, difüzyon veya test fonksiyonu sonlu olmayan bir değer ürettiğinde."""

    def __init__(self, message: str, point: Optional[Sequence[float]] = None) -> None:
        self.point = None if point is None else [float(v) for v in point]
        if self.point is not None:
            message = f"{message} (nokta: {self.point})"
        super().__init__(message)


class DivergenceError(ErgodicLabError, RuntimeError):
    """Euler / ULA zinciri ıraksadığında; adım indeksini ve replikayı taşır."""

    def __init__(self, step_index: int, replicate_id: int = 0, norm: float = float("nan")) -> None:
        self.step_index = step_index
        self.replicate_id = replicate_id
        self.norm = norm
        super().__init__(
            f"Yol ıraksadı: adım={step_index}, replika={replicate_id}, norm={norm:.3e}"
        )


class UnsupportedMethodError(ErgodicLabError, ValueError):
    """Model için kayıtlı olmayan bir yöntem istendiğinde (örn. exact durağan örnekleme)."""


class RegimeError(ErgodicLabError, ValueError):
    """PAC sonuçlarının geçerli olduğu parametre rejiminin dışına çıkıldığında."""


class CalibrationError(ErgodicLabError, RuntimeError):
    """Kalibrasyon ızgarasında kısıtları sağlayan değer bulunamadığında."""

    def __init__(self, message: str, diagnostics: Optional[Any] = None) -> None:
        self.diagnostics = diagnostics
        super().__init__(message)


class ExperimentError(ErgodicLabError, RuntimeError):
    """Deney geçersiz olduğunda (örn. ıraksayan yol oranı %1'i aştığında)."""


class ConvergenceError(ErgodicLabError, RuntimeError):
    """Lasso çözücüsü tolerans içinde yakınsamadığında."""

    def __init__(self, sweeps: int, kkt_residual: float) -> None:
        self.sweeps = sweeps
        self.kkt_residual = kkt_residual
        super().__init__(
            f"Koordinat inişi yakınsamadı: {sweeps} tur, KKT artığı={kkt_residual:.3e}"
        )


class NumericalError(ErgodicLabError, ValueError):
    """Tekil matris gibi sayısal olarak tanımsız durumlar; konumu taşır."""

    def __init__(self, message: str, location: Optional[Any] = None) -> None:
        self.location = location
        if location is not None:
            message = f"{message} (konum: {location})"
        super().__init__(message)
