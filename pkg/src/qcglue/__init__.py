"""Log-domain machinery for glued exponential-sum maps.

The package builds piecewise-linear slope schedules, evaluates exponential
partial sums and their transition maps in the log domain, assembles the glued
plane maps with their Beltrami dilatation, counts zeros, and ships a small
verification CLI around all of it.
"""

from ._quad import (
    core_integral,
    core_integral_complex,
    core_integral_log,
    recurrence_residual,
)
from .beltrami import (
    AnnulusResult,
    BeltramiSample,
    K_finite_difference,
    annulus_csv,
    fit_decay_exponent,
    mu_G,
    mu_Q_analytic,
    mu_U_analytic,
    mu_V_analytic,
    sk_contribution,
    twb_annulus_integral,
    twb_annulus_report,
    twb_dyadic_table,
    twb_summary,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    QcglueError,
    RangeError,
    SeamError,
)
from .expsum import (
    ExpPartialSum,
    PhiMap,
    build_phi_map,
    fixed_point,
    log_gm_minus_1,
    log_gm_minus_1_prime,
    make_partial_sum,
    phi_eval,
    phi_inverse,
    phi_prime,
    remainder_R,
    solve_s_m,
)
from .expsum_complex import MapValue, log_gm
from .glue import (
    GlueConfig,
    RegionTag,
    build_glue_config,
    classify_region,
    classify_sector,
    eval_G0,
    eval_G0_minus_1_log,
    eval_G1,
    eval_Q,
    eval_U,
    eval_V,
    eval_sector_power,
)
from .slope_schedule import (
    SlopeSchedule,
    build_schedule,
    build_schedule_with_prefix,
    prefix_for_exact_power,
)

__version__ = "0.1.0"

__all__ = [
    "AnnulusResult",
    "BeltramiSample",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "ExpPartialSum",
    "GlueConfig",
    "K_finite_difference",
    "MapValue",
    "PhiMap",
    "QcglueError",
    "RangeError",
    "RegionTag",
    "SeamError",
    "SlopeSchedule",
    "annulus_csv",
    "build_glue_config",
    "build_phi_map",
    "build_schedule",
    "build_schedule_with_prefix",
    "classify_region",
    "classify_sector",
    "core_integral",
    "core_integral_complex",
    "core_integral_log",
    "eval_G0",
    "eval_G0_minus_1_log",
    "eval_G1",
    "eval_Q",
    "eval_U",
    "eval_V",
    "eval_sector_power",
    "fit_decay_exponent",
    "fixed_point",
    "log_gm",
    "log_gm_minus_1",
    "log_gm_minus_1_prime",
    "make_partial_sum",
    "mu_G",
    "mu_Q_analytic",
    "mu_U_analytic",
    "mu_V_analytic",
    "phi_eval",
    "phi_inverse",
    "phi_prime",
    "prefix_for_exact_power",
    "recurrence_residual",
    "remainder_R",
    "sk_contribution",
    "solve_s_m",
    "twb_annulus_integral",
    "twb_annulus_report",
    "twb_dyadic_table",
    "twb_summary",
]
