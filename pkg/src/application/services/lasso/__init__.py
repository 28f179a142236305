from .diagnostics import (
    in_cone,
    l2_distance,
    oracle_check,
    plugin_constants,
    restricted_eigenvalue_probe,
    support,
    top_s_indices,
)
from .gram import (
    GramObserver,
    build_dictionary,
    check_growth_L1,
    drift_model,
    gram_and_target,
    psi_matrix,
)
from .lasso_service import LassoService
from .solver import lasso_path, lasso_solve, mle, soft_threshold

__all__ = [
    "GramObserver",
    "LassoService",
    "build_dictionary",
    "check_growth_L1",
    "drift_model",
    "gram_and_target",
    "in_cone",
    "l2_distance",
    "lasso_path",
    "lasso_solve",
    "mle",
    "oracle_check",
    "plugin_constants",
    "psi_matrix",
    "restricted_eigenvalue_probe",
    "soft_threshold",
    "support",
    "top_s_indices",
]
