"""Numerical evaluation of the zeta Mahler functions W_r(k; s) of the
Laurent polynomial family k + (x_1 + 1/x_1) ... (x_r + 1/x_r), together with
the associated densities, moments, Mahler measures, functional equations,
critical-line zeros, and independent torus-integration oracles."""

from .errors import (
    ContourError,
    ConvergenceError,
    DomainError,
    EdgeSingularityError,
    NearDegenerateParameterError,
    PoleError,
    ZmfError,
)
from .types import EvalResult, Method, QuadratureConfig, Regime, ZmfPoint
from .density import g_recursion, mellin_H, moment, p_hat, p_r
from .oracle import density_quadrature, monte_carlo, torus_quadrature
from .meijer import MeijerSpec, meijer_mb, meijer_triple_integral, w2_g_spec, w3_g_spec
from .zmf import (
    boundary_derivative_check,
    f_rs,
    h_rs,
    k_zero_derivatives,
    w,
    w1,
    w2,
    w2_odd,
    w3,
    w_light,
    w_real_s,
)
from .analysis import (
    BoxCount,
    ZeroRecord,
    check_beauty,
    check_fe_heavy,
    check_fe_light,
    count_zeros_box,
    find_zeros_w1,
    jacobi_phi,
    jacobi_weight,
    mahler_w2,
    mahler_w2_routes,
    mahler_w3,
    mahler_w3_routes,
    w1_rational_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "ZmfError",
    "PoleError",
    "DomainError",
    "ConvergenceError",
    "EdgeSingularityError",
    "NearDegenerateParameterError",
    "ContourError",
    "EvalResult",
    "Method",
    "Regime",
    "ZmfPoint",
    "QuadratureConfig",
    "p_hat",
    "p_r",
    "g_recursion",
    "moment",
    "mellin_H",
    "torus_quadrature",
    "monte_carlo",
    "density_quadrature",
    "MeijerSpec",
    "meijer_mb",
    "meijer_triple_integral",
    "w2_g_spec",
    "w3_g_spec",
    "w",
    "w1",
    "w2",
    "w2_odd",
    "w3",
    "w_light",
    "w_real_s",
    "f_rs",
    "h_rs",
    "boundary_derivative_check",
    "k_zero_derivatives",
    "check_fe_light",
    "check_fe_heavy",
    "find_zeros_w1",
    "count_zeros_box",
    "ZeroRecord",
    "BoxCount",
    "jacobi_phi",
    "jacobi_weight",
    "check_beauty",
    "mahler_w2",
    "mahler_w2_routes",
    "mahler_w3",
    "mahler_w3_routes",
    "w1_rational_decomposition",
]
