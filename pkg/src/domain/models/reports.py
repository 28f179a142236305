# src/domain/models/reports.py

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.domain.models.errors import ArgumentError


def binomial_se(fraction: float, count: int) -> float:
    if count <= 0:
        return float("nan")
    return math.sqrt(max(fraction * (1.0 - fraction), 0.0) / count)


@dataclass(frozen=True)
class ConditionReport:
    """Drift / potansiyel koşulunun prob ızgarasındaki sonucu."""
    holds: bool
    worst_margin: float
    witness: Optional[Tuple[float, ...]] = None
    probes: int = 0
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {
            "holds": self.holds,
            "worst_margin": self.worst_margin,
            "witness": None if self.witness is None else list(self.witness),
            "probes": self.probes,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TailTable:
    """
    |G| değerlerinin ampirik kuyruk tablosu.

    exceed_fraction[i] = P(|G| > thresholds[i]) tahmini; standard_errors binom SE.
    sorted_values tüm |G| değerlerini tutar, böylece herhangi bir eşikte sorgulanabilir.
    """
    thresholds: Tuple[float, ...]
    exceed_fraction: Tuple[float, ...]
    replicates: int
    standard_errors: Tuple[float, ...]
    sorted_values: np.ndarray = field(repr=False, compare=False, default_factory=lambda: np.empty(0))
    diverged: int = 0
    metadata: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.thresholds) != len(self.exceed_fraction) or len(self.thresholds) != len(self.standard_errors):
            raise ArgumentError("TailTable alan uzunlukları uyuşmuyor.")
        if list(self.thresholds) != sorted(self.thresholds):
            raise ArgumentError("Eşikler artan sırada olmalı.")
        if any(b > a for a, b in zip(self.exceed_fraction, self.exceed_fraction[1:])):
            raise ArgumentError("exceed_fraction eşikte artmayan olmalı.")

    @classmethod
    def from_values(
        cls,
        values: Sequence[float],
        thresholds: Sequence[float],
        diverged: int = 0,
        metadata: Optional[Dict[str, object]] = None,
    ) -> "TailTable":
        magnitudes = np.sort(np.abs(np.asarray(values, dtype=float)))
        if magnitudes.size == 0:
            raise ArgumentError("Kuyruk tablosu için en az bir değer gerekir.")
        ordered = tuple(sorted(float(t) for t in thresholds))
        fractions = tuple(_exceed(magnitudes, t) for t in ordered)
        errors = tuple(binomial_se(p, magnitudes.size) for p in fractions)
        magnitudes.setflags(write=False)
        return cls(
            thresholds=ordered,
            exceed_fraction=fractions,
            replicates=int(magnitudes.size),
            standard_errors=errors,
            sorted_values=magnitudes,
            diverged=diverged,
            metadata=dict(metadata or {}),
        )

    def exceedance(self, threshold: float) -> Tuple[float, float]:
        """(oran, SE) çifti; tablo eşiklerinden bağımsız olarak sorted_values üzerinden."""
        fraction = _exceed(self.sorted_values, threshold)
        return fraction, binomial_se(fraction, self.replicates)

    def rows(self) -> List[Dict[str, float]]:
        return [
            {"threshold": t, "exceed_fraction": p, "se": se}
            for t, p, se in zip(self.thresholds, self.exceed_fraction, self.standard_errors)
        ]


def _exceed(sorted_magnitudes: np.ndarray, threshold: float) -> float:
    count = sorted_magnitudes.size - int(np.searchsorted(sorted_magnitudes, threshold, side="right"))
    return count / sorted_magnitudes.size


@dataclass(frozen=True)
class CoverageReport:
    """PAC kapsama deneyi: |tahmin - hedef| <= epsilon olan koşu sayısı."""
    runs: int
    within_eps: int
    epsilon: float
    delta: float
    target_value: float
    estimates: Tuple[float, ...] = field(default=(), compare=False)
    exploratory: bool = False
    metadata: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.runs <= 0:
            raise ArgumentError("runs pozitif olmalı.")
        if not 0 <= self.within_eps <= self.runs:
            raise ArgumentError("within_eps, runs değerini aşamaz.")

    @property
    def coverage(self) -> float:
        return self.within_eps / self.runs

    @property
    def standard_error(self) -> float:
        return binomial_se(self.coverage, self.runs)

    @property
    def verdict(self) -> str:
        passed = self.coverage >= 1.0 - self.delta - 2.0 * self.standard_error
        return "pass" if passed else "fail"

    def rows(self) -> List[Dict[str, object]]:
        return [
            {"run_id": i, "estimate": v, "within": int(abs(v - self.target_value) <= self.epsilon)}
            for i, v in enumerate(self.estimates)
        ]

    def to_dict(self) -> Dict[str, object]:
        return {
            "runs": self.runs,
            "within_eps": self.within_eps,
            "coverage": self.coverage,
            "standard_error": self.standard_error,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "target_value": self.target_value,
            "verdict": self.verdict,
            "exploratory": self.exploratory,
            **{f"meta_{k}": v for k, v in self.metadata.items()},
        }


@dataclass(frozen=True)
class PoissonEstimate:
    """L^{-1}[f](x) Monte Carlo tahmini."""
    estimate: float
    stderr: float
    replicates: int
    excluded: int = 0

    @property
    def warning(self) -> bool:
        return self.excluded > 0.01 * max(self.replicates, 1)
