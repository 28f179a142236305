# src/domain/models/lasso.py

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.domain.models.errors import ArgumentError


@dataclass(frozen=True)
class DictionaryBlock:
    q_tilde: float      # [-1, 1)
    alpha_tilde: float  # > 0

    def __post_init__(self) -> None:
        if not -1.0 <= self.q_tilde < 1.0:
            raise ArgumentError(f"q_tilde [-1, 1) aralığında olmalı: {self.q_tilde}")
        if not (self.alpha_tilde > 0 and math.isfinite(self.alpha_tilde)):
            raise ArgumentError(f"alpha_tilde pozitif olmalı: {self.alpha_tilde}")


@dataclass(frozen=True)
class Dictionary:
    """
    Blok başına d^2 taban fonksiyonu: psi_i(x) = E_{kl} x (alpha~ + ||x||)^{-(q~+1)}.

    i = b*d^2 + k*d + l (0 tabanlı) ve E_{kl} yalnızca (k, l) girdisi 1 olan matris;
    yani psi_i(x) vektörünün sadece k. bileşeni sıfırdan farklıdır ve x_l ile orantılıdır.
    """
    d: int
    blocks: Tuple[DictionaryBlock, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ArgumentError(f"d >= 1 olmalı: {self.d}")
        if not self.blocks:
            raise ArgumentError("Sözlük en az bir blok içermelidir.")

    @property
    def N(self) -> int:
        return len(self.blocks) * self.d * self.d

    @property
    def eta(self) -> float:
        return max(max(-b.q_tilde, 0.0) for b in self.blocks)

    def index_of(self, block: int, k: int, l: int) -> int:
        return block * self.d * self.d + k * self.d + l

    def slot_of(self, i: int) -> Tuple[int, int, int]:
        if not 0 <= i < self.N:
            raise ArgumentError(f"Geçersiz indeks: {i}")
        block, rest = divmod(i, self.d * self.d)
        k, l = divmod(rest, self.d)
        return block, k, l

    def block_weights(self, x: np.ndarray) -> np.ndarray:
        """(..., d) -> (..., B) ağırlıkları (alpha~ + ||x||)^{-(q~+1)}."""
        norm = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)[..., None]
        alpha = np.array([b.alpha_tilde for b in self.blocks])
        power = np.array([b.q_tilde + 1.0 for b in self.blocks])
        return (alpha + norm) ** (-power)

    def features(self, x: np.ndarray) -> np.ndarray:
        """
        Kompakt özellik dizisi: F[..., b, l] = x_l * w_b(x).
        psi_i(x)_k' = F[b, l] * 1{k' == k}.
        """
        x = np.asarray(x, dtype=float)
        weights = self.block_weights(x)
        return weights[..., :, None] * x[..., None, :]

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Tam tasarım matrisi: (..., N, d), satır i = psi_i(x)."""
        x = np.asarray(x, dtype=float)
        feats = self.features(x)  # (..., B, d)
        B, d = len(self.blocks), self.d
        eye = np.eye(d)
        # (..., B, k, l, k')
        full = feats[..., :, None, :, None] * eye[None, :, None, :]
        return full.reshape(x.shape[:-1] + (B * d * d, d))

    def drift(self, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
        """b_theta(x) = sum_i theta_i psi_i(x), (..., d)."""
        theta = np.asarray(theta, dtype=float).reshape(len(self.blocks), self.d, self.d)
        feats = self.features(x)  # (..., B, l)
        return np.einsum("bkl,...bl->...k", theta, feats)


@dataclass(frozen=True)
class GramSystem:
    """Yol üzerinden kurulan Psi_bar (N x N) ve h_bar (N) sistemi."""
    Psi_bar: np.ndarray
    h_bar: np.ndarray
    T: float
    N: int

    def __post_init__(self) -> None:
        Psi = np.asarray(self.Psi_bar, dtype=float)
        h = np.asarray(self.h_bar, dtype=float).reshape(-1)
        if Psi.shape != (self.N, self.N) or h.shape != (self.N,):
            raise ArgumentError("GramSystem boyutları uyuşmuyor.")
        if not (np.all(np.isfinite(Psi)) and np.all(np.isfinite(h))):
            raise ArgumentError("GramSystem sonlu olmayan girdi içeriyor.")
        scale = max(float(np.max(np.abs(Psi))), 1e-300)
        if np.max(np.abs(Psi - Psi.T)) > 1e-12 * scale:
            raise ArgumentError("Psi_bar simetrik değil.")
        object.__setattr__(self, "Psi_bar", Psi)
        object.__setattr__(self, "h_bar", h)

    def objective(self, theta: np.ndarray, lam: float) -> float:
        theta = np.asarray(theta, dtype=float)
        return float(theta @ self.Psi_bar @ theta - 2.0 * theta @ self.h_bar + lam * np.sum(np.abs(theta)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.Psi_bar)[0])

    def is_psd(self, rel_tol: float = 1e-8) -> bool:
        norm = float(np.linalg.norm(self.Psi_bar, 2))
        return self.min_eigenvalue() >= -rel_tol * max(norm, 1e-300)


@dataclass(frozen=True)
class LassoFit:
    theta_hat: np.ndarray
    lam: float
    objective: float
    kkt_residual: float
    sweeps: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.objective):
            raise ArgumentError("Lasso amaç değeri sonlu değil.")

    @property
    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.theta_hat)))

    def support(self, tol: float = 0.0) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(np.abs(self.theta_hat) > tol))

    def to_dict(self) -> dict:
        return {
            "theta_hat": [float(v) for v in self.theta_hat],
            "lambda": self.lam,
            "objective": self.objective,
            "kkt_residual": self.kkt_residual,
            "sweeps": self.sweeps,
            "support": list(self.support()),
        }


@dataclass(frozen=True)
class OracleRecord:
    """Tek replika için oracle denetimi."""
    replicate_id: int
    lam: float
    lhs: float
    rhs: float
    holds: bool
    e_inf_hat: float
    D_inf_hat: float
    l1_norm: float


@dataclass(frozen=True)
class OracleExperiment:
    T: float
    s0: int
    records: Tuple[OracleRecord, ...]
    diverged: int = 0

    @property
    def holds_fraction(self) -> float:
        if not self.records:
            return 0.0
        return sum(r.holds for r in self.records) / len(self.records)

    @property
    def median_error(self) -> float:
        return float(np.median([r.lhs for r in self.records])) if self.records else math.nan

    def rows(self) -> list:
        return [
            {
                "replicate_id": r.replicate_id,
                "lambda": r.lam,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "holds": int(r.holds),
                "e_inf_hat": r.e_inf_hat,
                "D_inf_hat": r.D_inf_hat,
                "l1_norm": r.l1_norm,
            }
            for r in self.records
        ]

    def to_dict(self) -> dict:
        return {
            "T": self.T,
            "s0": self.s0,
            "replicates": len(self.records),
            "diverged": self.diverged,
            "holds_fraction": self.holds_fraction,
            "median_error": self.median_error,
        }
