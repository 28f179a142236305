from .calibration import (
    calibrate_D,
    calibrate_scale,
    calibrate_W,
    empirical_moments,
    scale_grid,
    validation_violations,
)
from .concentration_service import ConcentrationLabService

__all__ = [
    "ConcentrationLabService",
    "calibrate_D",
    "calibrate_scale",
    "calibrate_W",
    "empirical_moments",
    "scale_grid",
    "validation_violations",
]
