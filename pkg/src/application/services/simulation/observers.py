# src/application/services/simulation/observers.py

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from src.domain.models.errors import EvaluationError


class PathObserver(ABC):
    """
    Euler döngüsü her durum indeksinde observe(k, X, alive) çağırır.
    X.shape == (B, d); k = 0..n_steps. Durumları saklamadan özet üretmek için.
    """

    batch_axis = 0  # result() içinde replika ekseni

    def start(self, batch_size: int, dim: int) -> None:
        pass

    @abstractmethod
    def observe(self, k: int, states: np.ndarray, alive: np.ndarray) -> None:
        pass

    @abstractmethod
    def result(self) -> np.ndarray:
        pass


class WindowSumObserver(PathObserver):
    """
    sum_{k in [start, stop), (k - start) % stride == 0} fn(X_k), replika başına.

    Kahan (telafili) toplama kullanılır; uzun yollarda sonuç sıraya duyarsız kalır.
    """

    def __init__(
        self,
        fn: Callable[[np.ndarray], np.ndarray],
        start: int,
        stop: int,
        stride: int = 1,
        name: str = "f",
    ):
        if stride < 1 or start < 0 or stop < start:
            raise ValueError("Geçersiz pencere.")
        self._fn = fn
        self.start_index = start
        self.stop_index = stop
        self.stride = stride
        self.name = name
        self._sum: Optional[np.ndarray] = None
        self._comp: Optional[np.ndarray] = None
        self.count = 0
        self.bad = None

    def start(self, batch_size: int, dim: int) -> None:
        self._sum = np.zeros(batch_size)
        self._comp = np.zeros(batch_size)
        self.bad = np.zeros(batch_size, dtype=bool)
        self.count = 0

    def wants(self, k: int) -> bool:
        return self.start_index <= k < self.stop_index and (k - self.start_index) % self.stride == 0

    def observe(self, k: int, states: np.ndarray, alive: np.ndarray) -> None:
        if not self.wants(k):
            return
        values = np.asarray(self._fn(states), dtype=float).reshape(states.shape[0])
        finite = np.isfinite(values)
        if not np.all(finite[alive]):
            idx = int(np.flatnonzero(alive & ~finite)[0])
            raise EvaluationError(f"{self.name} sonlu olmayan değer üretti (adım {k})", states[idx])
        values = np.where(alive, values, 0.0)
        # Kahan toplama
        y = values - self._comp
        t = self._sum + y
        self._comp = (t - self._sum) - y
        self._sum = t
        self.count += 1

    def result(self) -> np.ndarray:
        return self._sum.copy()


class SnapshotObserver(PathObserver):
    """Belirli indekslerdeki durumları saklar (ör. X_{kΔ} örnekleri)."""

    batch_axis = 1

    def __init__(self, indices):
        self._indices = {int(k): i for i, k in enumerate(sorted(set(indices)))}
        self._buffer: Optional[np.ndarray] = None

    def start(self, batch_size: int, dim: int) -> None:
        self._buffer = np.full((len(self._indices), batch_size, dim), np.nan)

    def observe(self, k: int, states: np.ndarray, alive: np.ndarray) -> None:
        slot = self._indices.get(k)
        if slot is not None:
            self._buffer[slot] = states

    def result(self) -> np.ndarray:
        return self._buffer.copy()
