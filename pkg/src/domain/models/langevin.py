# src/domain/models/langevin.py

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.domain.models.errors import ArgumentError

PotentialFn = Callable[[np.ndarray], np.ndarray]   # (..., d) -> (...)
GradientFn = Callable[[np.ndarray], np.ndarray]    # (..., d) -> (..., d)


@dataclass(frozen=True)
class Potential:
    """
    pi ∝ exp(-U) hedefi için potansiyel.

    U(q) koşulu: ||x|| >= M0 ise <grad U(x), x/||x||> >= r_frak * ||x||^{-q}.
    L_lip grad U'nun Lipschitz sabiti, grad_sup ise sup ||grad U||.
    """
    U: PotentialFn
    grad_U: GradientFn
    dim: int
    q: float
    L_lip: float
    grad_sup: float
    M0: float
    r_frak: float
    name: str = "potential"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ArgumentError(f"dim >= 1 olmalı: {self.dim}")
        if not -1.0 <= self.q < 1.0:
            raise ArgumentError(f"q [-1, 1) aralığında olmalı: {self.q}")
        if not (self.L_lip > 0 and math.isfinite(self.L_lip)):
            raise ArgumentError(f"L_lip pozitif ve sonlu olmalı: {self.L_lip}")
        if not self.grad_sup > 0:
            raise ArgumentError(f"grad_sup pozitif olmalı: {self.grad_sup}")
        if self.M0 < 0 or not self.r_frak > 0:
            raise ArgumentError("M0 >= 0 ve r_frak > 0 olmalı.")

    @property
    def is_heavy_tailed(self) -> bool:
        return 0.0 < self.q < 1.0

    def density_unnormalised(self, x: np.ndarray) -> np.ndarray:
        return np.exp(-np.asarray(self.U(x), dtype=float))

    def lyapunov(self, x: np.ndarray, iota: float) -> np.ndarray:
        """V_q(x) = exp(iota * ||x||^{1-q})."""
        norm = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return np.exp(iota * norm ** (1.0 - max(self.q, 0.0)))


@dataclass(frozen=True)
class UlaChain:
    """ULA zinciri; states.shape == (n_steps + 1, d), states[0] = x0."""
    states: np.ndarray
    delta_step: float
    seed: int
    replicate_id: int = 0

    def __post_init__(self) -> None:
        states = np.asarray(self.states, dtype=float)
        if states.ndim == 1:
            states = states.reshape(-1, 1)
        if states.ndim != 2 or states.shape[0] == 0:
            raise ArgumentError("UlaChain en az bir durum içermelidir.")
        if not self.delta_step > 0:
            raise ArgumentError(f"delta_step pozitif olmalı: {self.delta_step}")
        if not np.all(np.isfinite(states)):
            raise ArgumentError("UlaChain sonlu olmayan durum içeriyor.")
        states.setflags(write=False)
        object.__setattr__(self, "states", states)

    @property
    def n_steps(self) -> int:
        return self.states.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.states.shape[1]


@dataclass(frozen=True)
class UlaTuning:
    """ULA için ayarlanmış (Delta, n, m) ve Delta üst sınırları."""
    delta_step: float
    n: int
    m: int
    caps: tuple
    safety: float = 0.9

    def to_dict(self) -> dict:
        return {
            "delta_step": self.delta_step,
            "n": self.n,
            "m": self.m,
            "caps": list(self.caps),
            "safety": self.safety,
        }
