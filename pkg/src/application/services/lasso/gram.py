# src/application/services/lasso/gram.py

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from src.application.services.simulation.observers import PathObserver
from src.domain.models.diffusion import DiffusionFn, DiffusionModel, ErgodicityParams
from src.domain.models.errors import ArgumentError, NumericalError
from src.domain.models.lasso import Dictionary, DictionaryBlock, GramSystem
from src.domain.models.reports import ConditionReport
from src.domain.models.trajectory import Trajectory

SINGULAR_CONDITION = 1e12
_CHUNK = 4096


def build_dictionary(d: int, blocks: Iterable[Tuple[float, float]]) -> Dictionary:
    """(q~, alpha~) çiftlerinden sözlük; N = len(blocks) * d^2."""
    return Dictionary(d=d, blocks=tuple(DictionaryBlock(float(q), float(a)) for q, a in blocks))


def inverse_diffusion(sigma0: DiffusionFn, x: np.ndarray) -> np.ndarray:
    """
    a0(x)^{-1} = (sigma0 sigma0^T)^{-1}, (..., d, d), simetrikleştirilmiş.

    Raises:
        NumericalError: a0 bir durumda tekil ya da sonlu değilse (durumu taşır).
    """
    x = np.asarray(x, dtype=float)
    sig = np.asarray(sigma0(x), dtype=float)
    a = sig @ np.swapaxes(sig, -1, -2)
    finite = np.all(np.isfinite(a), axis=(-2, -1))
    cond = np.where(finite, np.linalg.cond(np.where(finite[..., None, None], a, 1.0)), np.inf)
    bad = ~(cond < SINGULAR_CONDITION)
    if np.any(bad):
        where = np.argwhere(bad)[0]
        raise NumericalError("a0 = sigma0 sigma0^T tekil", tuple(float(v) for v in x[tuple(where)]))
    inv = np.linalg.inv(a)
    return 0.5 * (inv + np.swapaxes(inv, -1, -2))


def _pair_sums(
    dictionary: Dictionary,
    sigma0: DiffusionFn,
    x: np.ndarray,
    x_next: Optional[np.ndarray],
    per_row: bool,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    <psi_i, a0^{-1} psi_j>(x) ve <psi_i(x), a0^{-1}(x) (x_next - x)> terimleri.

    per_row True ise ilk eksen korunur (B, N, N) / (B, N); değilse ilk eksen üzerinden toplanır.
    """
    feats = dictionary.features(x)            # (t, B, d) -> [b, l]
    ainv = inverse_diffusion(sigma0, x)       # (t, d, d) -> [k, m]
    lead = "t" if per_row else ""
    psi = np.einsum(f"tbl,tcn,tkm->{lead}bklcmn", feats, feats, ainv)
    N = dictionary.N
    psi = psi.reshape(psi.shape[:1] + (N, N)) if per_row else psi.reshape(N, N)
    if x_next is None:
        return psi, None
    z = np.einsum("tkm,tm->tk", ainv, x_next - x)
    h = np.einsum(f"tbl,tk->{lead}bkl", feats, z)
    h = h.reshape(h.shape[:1] + (N,)) if per_row else h.reshape(N)
    return psi, h


def gram_and_target(traj: Trajectory, dictionary: Dictionary, sigma0: DiffusionFn) -> GramSystem:
    """
    Psi_bar_ij = (1/T) sum_k <psi_i, a0^{-1} psi_j>(X_{t_k}) delta (sol uç),
    h_bar_i   = (1/T) sum_k <psi_i(X_{t_k}), a0^{-1}(X_{t_k}) (X_{t_{k+1}} - X_{t_k})> (sol uç Itô).
    """
    if traj.dim != dictionary.d:
        raise ArgumentError(f"Boyut uyuşmuyor: trajectory d={traj.dim}, sözlük d={dictionary.d}")
    n = traj.n_steps
    if n < 1:
        raise ArgumentError("Trajectory en az bir adım içermelidir.")
    N = dictionary.N
    psi_sum = np.zeros((N, N))
    h_sum = np.zeros(N)
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        psi, h = _pair_sums(dictionary, sigma0, traj.states[start:stop], traj.states[start + 1:stop + 1], False)
        psi_sum += psi
        h_sum += h
    T = n * traj.step
    Psi_bar = psi_sum / n
    return GramSystem(Psi_bar=0.5 * (Psi_bar + Psi_bar.T), h_bar=h_sum / T, T=T, N=N)


def psi_matrix(dictionary: Dictionary, sigma0: DiffusionFn, x: np.ndarray) -> np.ndarray:
    """Tek noktada Psi(x)_ij = <psi_i(x), a0(x)^{-1} psi_j(x)>."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    psi, _ = _pair_sums(dictionary, sigma0, x, None, True)
    return psi[0] if psi.shape[0] == 1 else psi


class GramObserver(PathObserver):
    """
    Replika başına Psi ve h toplamlarını yol boyunca biriktirir (durumlar saklanmadan).
    Sonuç (B, N, N + 1): [..., :N] Psi toplamı, [..., N] h toplamı.
    """

    def __init__(self, dictionary: Dictionary, sigma0: DiffusionFn) -> None:
        self._dictionary = dictionary
        self._sigma0 = sigma0
        self._prev: Optional[np.ndarray] = None
        self._acc: Optional[np.ndarray] = None
        self.steps = 0

    def start(self, batch_size: int, dim: int) -> None:
        N = self._dictionary.N
        self._acc = np.zeros((batch_size, N, N + 1))
        self._prev = None
        self.steps = 0

    def observe(self, k: int, states: np.ndarray, alive: np.ndarray) -> None:
        if self._prev is not None and alive.any():
            N = self._dictionary.N
            psi, h = _pair_sums(self._dictionary, self._sigma0, self._prev[alive], states[alive], True)
            self._acc[alive, :, :N] += psi
            self._acc[alive, :, N] += h
            self.steps += 1
        self._prev = np.array(states, copy=True)

    def result(self) -> np.ndarray:
        return self._acc.copy()


def systems_from_sums(sums: np.ndarray, n_steps: int, step: float) -> list[GramSystem]:
    """GramObserver çıktısından replika başına GramSystem."""
    N = sums.shape[1]
    T = n_steps * step
    systems = []
    for row in sums:
        Psi_bar = row[:, :N] / n_steps
        systems.append(GramSystem(Psi_bar=0.5 * (Psi_bar + Psi_bar.T), h_bar=row[:, N] / T, T=T, N=N))
    return systems


def drift_model(
    dictionary: Dictionary,
    theta: np.ndarray,
    sigma: DiffusionFn,
    ergodicity: ErgodicityParams,
    name: str = "lasso-drift",
) -> DiffusionModel:
    """b_theta = sum_i theta_i psi_i ile simüle edilebilir model."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.size != dictionary.N:
        raise ArgumentError(f"theta boyutu {theta.size} != N={dictionary.N}")
    return DiffusionModel(
        dim=dictionary.d,
        drift=lambda x: dictionary.drift(theta, x),
        diffusion=sigma,
        ergodicity=ergodicity,
        name=name,
    )


def check_growth_L1(
    dictionary: Dictionary,
    sigma0: DiffusionFn,
    L_frak: float,
    probes: Sequence[Sequence[float]],
) -> ConditionReport:
    """lambda_max(Psi(x)) <= L (1 + ||x||^{2 eta}) koşulu prob noktalarında."""
    points = np.atleast_2d(np.asarray(probes, dtype=float))
    if points.shape[1] != dictionary.d:
        raise ArgumentError("Prob boyutu sözlükle uyuşmuyor.")
    psi = psi_matrix(dictionary, sigma0, points).reshape(points.shape[0], dictionary.N, dictionary.N)
    top = np.linalg.eigvalsh(psi)[:, -1]
    envelope = L_frak * (1.0 + np.linalg.norm(points, axis=1) ** (2.0 * dictionary.eta))
    margins = top - envelope
    worst = int(np.argmax(margins))
    holds = bool(np.all(margins <= 1e-12 * envelope))
    return ConditionReport(
        holds=holds,
        worst_margin=float(margins[worst]),
        witness=None if holds else tuple(float(v) for v in points[worst]),
        probes=int(points.shape[0]),
    )
