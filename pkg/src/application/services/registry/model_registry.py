# src/application/services/registry/model_registry.py

from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, Mapping, Sequence, Tuple

import numpy as np

from src.application.services.langevin.potentials import (
    langevin_model,
    make_gaussian_potential,
    make_heavy_potential,
)
from src.application.services.lasso.gram import build_dictionary
from src.domain.models.diffusion import DiffusionModel, ErgodicityParams, constant_diffusion
from src.domain.models.errors import ArgumentError
from src.domain.models.function_class import (
    TestFunction,
    constant_function,
    coordinate_function,
    squared_norm_function,
)
from src.domain.models.langevin import Potential
from src.domain.models.lasso import Dictionary
from src.domain.ports.registries.i_model_registry import IModelRegistry

logger = logging.getLogger(__name__)

Factory = Callable[..., Any]


def _gaussian_sampler(cov: np.ndarray):
    chol = np.linalg.cholesky(cov)

    def sampler(gen: np.random.Generator, size: int) -> np.ndarray:
        return gen.standard_normal((size, cov.shape[0])) @ chol.T

    return sampler


def ou_model(d: int = 1) -> DiffusionModel:
    """b(x) = -x, sigma = sqrt(2) I; mu = N(0, I)."""
    return ou_scaled_model(theta=1.0, s=math.sqrt(2.0), d=d).with_name(f"ou(d={d})")


def ou_scaled_model(theta: float = 1.0, s: float = 1.0, d: int = 1) -> DiffusionModel:
    """b(x) = -theta x, sigma = s I; mu = N(0, s^2 / (2 theta) I)."""
    if not (theta > 0 and s > 0) or d < 1:
        raise ArgumentError("theta > 0, s > 0 ve d >= 1 olmalı.")
    a = s * s
    params = ErgodicityParams.with_default_iota(
        q=-1.0, q_prime=1.0, M0=0.0, r_frak=theta, lambda_minus=a, lambda_plus=a, Lambda_cap=a
    )
    return DiffusionModel(
        dim=d,
        drift=lambda x: -theta * np.asarray(x, dtype=float),
        diffusion=constant_diffusion(s * np.eye(d)),
        ergodicity=params,
        name=f"ou-scaled(theta={theta:g},s={s:g},d={d})",
        stationary_sampler=_gaussian_sampler(a / (2.0 * theta) * np.eye(d)),
    )


def heavy_drift_model(d: int = 1) -> DiffusionModel:
    """b(x) = -x / (1 + ||x||): sınırlı drift, q = 0; ||x|| >= 1 için radyal drift <= -1/2."""
    if d < 1:
        raise ArgumentError("d >= 1 olmalı.")
    params = ErgodicityParams.with_default_iota(
        q=0.0, q_prime=0.0, M0=1.0, r_frak=0.5, lambda_minus=2.0, lambda_plus=2.0, Lambda_cap=2.0
    )

    def drift(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return -x / (1.0 + np.linalg.norm(x, axis=-1, keepdims=True))

    return DiffusionModel(
        dim=d,
        drift=drift,
        diffusion=constant_diffusion(math.sqrt(2.0) * np.eye(d)),
        ergodicity=params,
        name=f"heavy-drift(d={d})",
    )


def subexp_model(q: float = 0.5, scale: float = 1.0, strength: float = 1.0, d: int = 1) -> DiffusionModel:
    return langevin_model(make_heavy_potential(d, q, scale, strength))


def sparse_linear_matrix(d: int = 5, coupling: float = 0.3) -> np.ndarray:
    """A = -I + coupling (E_12 + E_21): simetrik, özdeğerler -1 +- coupling ve -1."""
    if d < 2:
        raise ArgumentError("sparse-linear için d >= 2 olmalı.")
    if not 0.0 <= coupling < 1.0:
        raise ArgumentError(f"coupling [0, 1) aralığında olmalı: {coupling}")
    A = -np.eye(d)
    A[0, 1] = A[1, 0] = coupling
    return A


def sparse_linear_model(d: int = 5, coupling: float = 0.3) -> DiffusionModel:
    """b(x) = A x, sigma = I; mu = N(0, -A^{-1} / 2)."""
    A = sparse_linear_matrix(d, coupling)
    params = ErgodicityParams.with_default_iota(
        q=-1.0, q_prime=1.0, M0=0.0, r_frak=1.0 - coupling, lambda_minus=1.0, lambda_plus=1.0, Lambda_cap=1.0
    )
    return DiffusionModel(
        dim=d,
        drift=lambda x: np.asarray(x, dtype=float) @ A.T,
        diffusion=constant_diffusion(np.eye(d)),
        ergodicity=params,
        name=f"sparse-linear(d={d},coupling={coupling:g})",
        stationary_sampler=_gaussian_sampler(-0.5 * np.linalg.inv(A)),
    )


def sparse_linear_setup(d: int = 5, coupling: float = 0.3) -> Tuple[DiffusionModel, Dictionary, np.ndarray]:
    """
    Lasso deneyi için (model, sözlük, theta0).

    Tek doğrusal blok (q~ = -1, alpha~ = 1) ile psi_{kl}(x) = E_kl x; theta0 = vec(A).
    """
    A = sparse_linear_matrix(d, coupling)
    dictionary = build_dictionary(d, [(-1.0, 1.0)])
    return sparse_linear_model(d, coupling), dictionary, A.reshape(-1).copy()


def deterministic_model(d: int = 1) -> DiffusionModel:
    """b(x) = -x, sigma = 0. Eliptik değildir; lambda değerleri nominal 1 olarak kaydedilir."""
    if d < 1:
        raise ArgumentError("d >= 1 olmalı.")
    params = ErgodicityParams.with_default_iota(
        q=-1.0, q_prime=1.0, M0=0.0, r_frak=1.0, lambda_minus=1.0, lambda_plus=1.0, Lambda_cap=1.0
    )
    return DiffusionModel(
        dim=d,
        drift=lambda x: -np.asarray(x, dtype=float),
        diffusion=constant_diffusion(np.zeros((d, d))),
        ergodicity=params,
        name=f"deterministic(d={d})",
    )


def _coordinate(index: int = 0) -> TestFunction:
    return coordinate_function(index)


def _squared_norm(offset: float = 0.0) -> TestFunction:
    return squared_norm_function(offset)


def _constant(value: float = 1.0) -> TestFunction:
    return constant_function(value)


MODELS: Dict[str, Tuple[Factory, Dict[str, Any]]] = {
    "ou": (ou_model, {"d": 1}),
    "ou-scaled": (ou_scaled_model, {"theta": 1.0, "s": 1.0, "d": 1}),
    "heavy-drift": (heavy_drift_model, {"d": 1}),
    "subexp": (subexp_model, {"q": 0.5, "scale": 1.0, "strength": 1.0, "d": 1}),
    "sparse-linear": (sparse_linear_model, {"d": 5, "coupling": 0.3}),
    "deterministic": (deterministic_model, {"d": 1}),
}

POTENTIALS: Dict[str, Tuple[Factory, Dict[str, Any]]] = {
    "heavy": (lambda q, scale, strength, d: make_heavy_potential(d, q, scale, strength),
              {"q": 0.5, "scale": 1.0, "strength": 1.0, "d": 1}),
    "gaussian": (lambda precision, d: make_gaussian_potential(d, precision), {"precision": 1.0, "d": 1}),
}

LASSO_SETUPS: Dict[str, Tuple[Factory, Dict[str, Any]]] = {
    "sparse-linear": (sparse_linear_setup, {"d": 5, "coupling": 0.3}),
}

FUNCTIONS: Dict[str, Tuple[Factory, Dict[str, Any]]] = {
    "x": (_coordinate, {"index": 0}),
    "x2": (_squared_norm, {"offset": 0.0}),
    "const": (_constant, {"value": 1.0}),
}


def _resolve(kind: str, table: Mapping[str, Tuple[Factory, Dict[str, Any]]], name: str, params: Mapping[str, Any] | None):
    if name not in table:
        raise ArgumentError(f"Bilinmeyen {kind}: '{name}'. Seçenekler: {sorted(table)}")
    factory, defaults = table[name]
    given = dict(params or {})
    unknown = set(given) - set(defaults)
    if unknown:
        raise ArgumentError(f"'{name}' için bilinmeyen parametre(ler): {sorted(unknown)}")
    kwargs = dict(defaults)
    for key, value in given.items():
        cast = type(defaults[key])
        try:
            kwargs[key] = cast(value)
        except (TypeError, ValueError) as exc:
            raise ArgumentError(f"'{key}' {cast.__name__} olmalı: {value!r}") from exc
        if cast is int and float(value) != kwargs[key]:
            raise ArgumentError(f"'{key}' tam sayı olmalı: {value!r}")
    logger.debug("%s '%s' oluşturuluyor: %s", kind, name, kwargs)
    return factory(**kwargs)


class BuiltinModelRegistry(IModelRegistry):
    """Yerleşik katalog: modeller, potansiyeller ve test fonksiyonları."""

    def model_names(self) -> Sequence[str]:
        return sorted(MODELS)

    def get_model(self, name: str, params: Mapping[str, Any] | None = None) -> DiffusionModel:
        return _resolve("model", MODELS, name, params)

    def get_potential(self, name: str, params: Mapping[str, Any] | None = None) -> Potential:
        return _resolve("potansiyel", POTENTIALS, name, params)

    def get_function(self, name: str, params: Mapping[str, Any] | None = None) -> TestFunction:
        return _resolve("fonksiyon", FUNCTIONS, name, params)

    def lasso_model_names(self) -> Sequence[str]:
        return sorted(LASSO_SETUPS)

    def get_lasso_setup(
        self, name: str, params: Mapping[str, Any] | None = None
    ) -> Tuple[DiffusionModel, Dictionary, np.ndarray]:
        return _resolve("lasso modeli", LASSO_SETUPS, name, params)
