# src/domain/models/function_class.py

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from src.domain.models.errors import ArgumentError

# Vektörize: (..., d) -> (...)
ScalarFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TestFunction:
    """
    Polinom büyümeli f: |f(x)| <= L_frak * (1 + ||x||^eta1).

    eta2 / eta3 gradyan ve Hessian büyüme dereceleridir (ayrık sonuçlarda gerekir).
    centered_mean biliniyorsa mu(f) değeridir; center() ile merkezlenmiş f elde edilir.
    """
    __test__ = False  # pytest bu sınıfı test sınıfı sanmasın

    eval: ScalarFn
    eta1: float
    L_frak: float
    eta2: Optional[float] = None
    eta3: Optional[float] = None
    centered_mean: Optional[float] = None
    name: str = "f"

    def __post_init__(self) -> None:
        if self.eta1 < 0:
            raise ArgumentError(f"eta1 negatif olamaz: {self.eta1}")
        if not self.L_frak > 0:
            raise ArgumentError(f"L_frak pozitif olmalı: {self.L_frak}")
        for name in ("eta2", "eta3"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ArgumentError(f"{name} negatif olamaz: {value}")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.eval(np.asarray(x, dtype=float)), dtype=float)

    @property
    def is_centered(self) -> bool:
        return self.centered_mean is not None and self.centered_mean == 0.0

    def growth_envelope(self, x: np.ndarray) -> np.ndarray:
        norm = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return self.L_frak * (1.0 + norm ** self.eta1)

    def scaled(self, factor: float) -> "TestFunction":
        base = self.eval
        mean = None if self.centered_mean is None else factor * self.centered_mean
        return replace(
            self,
            eval=lambda x: factor * base(x),
            L_frak=max(abs(factor), 1e-300) * self.L_frak,
            centered_mean=mean,
            name=f"{factor}*{self.name}",
        )

    def plus(self, other: "TestFunction") -> "TestFunction":
        f, g = self.eval, other.eval
        mean = None
        if self.centered_mean is not None and other.centered_mean is not None:
            mean = self.centered_mean + other.centered_mean
        return TestFunction(
            eval=lambda x: f(x) + g(x),
            eta1=max(self.eta1, other.eta1),
            L_frak=self.L_frak + other.L_frak,
            centered_mean=mean,
            name=f"{self.name}+{other.name}",
        )


def constant_function(value: float) -> TestFunction:
    return TestFunction(
        eval=lambda x: np.full(np.asarray(x).shape[:-1], float(value)),
        eta1=0.0,
        L_frak=max(abs(value), 1e-12),
        eta2=0.0,
        eta3=0.0,
        centered_mean=float(value),
        name=f"const({value})",
    )


def coordinate_function(index: int = 0) -> TestFunction:
    return TestFunction(
        eval=lambda x: np.asarray(x)[..., index],
        eta1=1.0,
        L_frak=1.0,
        eta2=0.0,
        eta3=0.0,
        name=f"x{index + 1}",
    )


def squared_norm_function(offset: float = 0.0) -> TestFunction:
    """f(x) = ||x||^2 - offset."""
    return TestFunction(
        eval=lambda x: np.sum(np.asarray(x) ** 2, axis=-1) - offset,
        eta1=2.0,
        L_frak=max(1.0, abs(offset)),
        eta2=1.0,
        eta3=0.0,
        name="|x|^2" if offset == 0 else f"|x|^2-{offset}",
    )
