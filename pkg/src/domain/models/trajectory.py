# src/domain/models/trajectory.py

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.domain.models.errors import ArgumentError


@dataclass(frozen=True)
class Trajectory:
    """
    Tek bir Euler–Maruyama koşusunun sonucu.

    Zaman ızgarası saklanmaz: k. durumun zamanı t0 + k * step.
    states.shape == (n_steps + 1, d)
    """
    t0: float
    step: float
    states: np.ndarray
    seed: int
    replicate_id: int
    brownian_resolution: int = 1

    def __post_init__(self) -> None:
        states = np.array(self.states, dtype=float)  # kopya
        if states.ndim == 1:
            states = states.reshape(-1, 1)
        if states.ndim != 2 or states.shape[0] == 0:
            raise ArgumentError("Trajectory en az bir durum içermelidir.")
        if not self.step > 0:
            raise ArgumentError(f"step pozitif olmalı: {self.step}")
        if not np.all(np.isfinite(states)):
            raise ArgumentError("Trajectory sonlu olmayan durum içeriyor.")
        states.setflags(write=False)
        object.__setattr__(self, "states", states)

    @property
    def n_steps(self) -> int:
        return self.states.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def horizon(self) -> float:
        return self.n_steps * self.step

    def time_of(self, k: int) -> float:
        return self.t0 + k * self.step

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.states.shape[0]) * self.step

    def endpoint(self) -> np.ndarray:
        return self.states[-1].copy()

    def subsample(self, every: int) -> np.ndarray:
        """Her `every` adımda bir durumu döndürür, X_0 hariç: X_{kΔ}, k = 1..n."""
        if every < 1:
            raise ArgumentError(f"every >= 1 olmalı: {every}")
        return self.states[every::every]
