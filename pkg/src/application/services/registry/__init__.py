from src.application.services.registry.model_registry import (
    BuiltinModelRegistry,
    deterministic_model,
    heavy_drift_model,
    ou_model,
    ou_scaled_model,
    sparse_linear_model,
    sparse_linear_setup,
    subexp_model,
)

__all__ = [
    "BuiltinModelRegistry",
    "deterministic_model",
    "heavy_drift_model",
    "ou_model",
    "ou_scaled_model",
    "sparse_linear_model",
    "sparse_linear_setup",
    "subexp_model",
]
