"""Special-function core: log-Gamma, modified Bessel I and K of real order,
Gegenbauer polynomials, sphere constants and inequality checks."""

from .bessel import Order, bessel_i, bessel_i_log, bessel_k, bessel_k_log, bessel_k_ratio
from .bounds import (
    BoundCheck,
    check_bessel_i_bound,
    check_gamma_ratio_bound,
    check_gegenbauer_bound,
    check_k_ratio_bound,
    check_macdonald_bounds,
)
from .gamma import ball_volume, gamma_ln, gamma_ls, sphere_surface
from .gegenbauer import gegenbauer
from .integrals import bessel_cross_integral, gegenbauer_bessel_integral
from .logscaled import LogScaled

__all__ = [
    "BoundCheck",
    "LogScaled",
    "Order",
    "ball_volume",
    "bessel_cross_integral",
    "bessel_i",
    "bessel_i_log",
    "bessel_k",
    "bessel_k_log",
    "bessel_k_ratio",
    "check_bessel_i_bound",
    "check_gamma_ratio_bound",
    "check_gegenbauer_bound",
    "check_k_ratio_bound",
    "check_macdonald_bounds",
    "gamma_ln",
    "gamma_ls",
    "gegenbauer",
    "gegenbauer_bessel_integral",
    "sphere_surface",
]
