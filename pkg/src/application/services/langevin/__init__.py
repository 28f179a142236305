from .langevin_service import LangevinService
from .potentials import (
    check_potential,
    langevin_model,
    make_gaussian_potential,
    make_heavy_potential,
)
from .quadrature import quadrature_target_integral
from .ula import ula_chain, ula_estimates_batch, ula_estimator

__all__ = [
    "LangevinService",
    "check_potential",
    "langevin_model",
    "make_gaussian_potential",
    "make_heavy_potential",
    "quadrature_target_integral",
    "ula_chain",
    "ula_estimates_batch",
    "ula_estimator",
]
