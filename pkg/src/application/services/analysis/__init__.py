from .functionals import (
    burnin_average_continuous,
    burnin_average_discrete,
    center,
    check_growth,
    continuous_additive,
    discrete_additive,
    discretisation_error,
)
from .poisson_service import PoissonService

__all__ = [
    "PoissonService",
    "burnin_average_continuous",
    "burnin_average_discrete",
    "center",
    "check_growth",
    "continuous_additive",
    "discrete_additive",
    "discretisation_error",
]
