from .exponents import (
    cattiaux_c,
    choose_discrete_exponents,
    kappa,
    mu_moment_constant,
    q_plus,
    rate_exponent,
    rho_exponent,
)
from .lasso_bounds import (
    gram_deviation_tail,
    lasso_lambda_min,
    lasso_T0,
    oracle_bound,
    sparse_oracle_rhs,
)
from .sample_sizes import (
    bounded_regime_delta,
    burnin_length_continuous,
    burnin_length_discrete,
    cattiaux_threshold,
    cattiaux_u_window,
    continuous_moment_bound,
    continuous_tail_threshold,
    discrete_moment_bound,
    discrete_tail_threshold,
    ergodicity_tv_bound,
    sample_length_continuous,
    sample_size_discrete,
)
from .ula_bounds import (
    table_order_step,
    ula_step_caps,
    ula_tuning,
    ula_tuning_check,
    ula_tv_bound,
    ula_tv_tuning,
)

__all__ = [
    "bounded_regime_delta",
    "burnin_length_continuous",
    "burnin_length_discrete",
    "cattiaux_c",
    "cattiaux_threshold",
    "cattiaux_u_window",
    "choose_discrete_exponents",
    "continuous_moment_bound",
    "continuous_tail_threshold",
    "discrete_moment_bound",
    "discrete_tail_threshold",
    "ergodicity_tv_bound",
    "gram_deviation_tail",
    "kappa",
    "lasso_lambda_min",
    "lasso_T0",
    "mu_moment_constant",
    "oracle_bound",
    "q_plus",
    "rate_exponent",
    "rho_exponent",
    "sample_length_continuous",
    "sample_size_discrete",
    "sparse_oracle_rhs",
    "table_order_step",
    "ula_step_caps",
    "ula_tuning",
    "ula_tuning_check",
    "ula_tv_bound",
    "ula_tv_tuning",
]
