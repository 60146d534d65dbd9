"""Checkable forms of the Bessel, Gamma and Gegenbauer inequalities used to
control series truncation.

Every check works in log space and returns a :class:`BoundCheck`; ``slack``
is the relative margin ``(bound - value) / value`` (for a lower bound,
``(value - bound) / bound``), so ``holds`` is equivalent to ``slack >= -tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from .bessel import _check_x, _k_log_and_ratio, _order, bessel_i_log, bessel_k_ratio
from .gegenbauer import gegenbauer

# Allowance for rounding when a bound is attained with equality.
ROUNDING_TOL = 1e-12

LN2 = math.log(2.0)


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    slack: float


def _margin(log_bound_minus_value: float) -> float:
    return math.expm1(min(log_bound_minus_value, 700.0))


def _check(*log_margins: float) -> BoundCheck:
    slack = min(_margin(m) for m in log_margins)
    return BoundCheck(slack >= -ROUNDING_TOL, slack)


def macdonald_bounds_log(mu: float, x: float) -> tuple[float, float]:
    """log of the lower and upper Macdonald-function bounds for mu >= 1/2.

    lower = 2^{mu-1} Gamma(mu) e^{-x} / x^mu
    upper = 2^{mu+1} (2 + 1/x)^mu Gamma(mu) e^{-x}
    """
    lg = math.lgamma(mu)
    lower = (mu - 1.0) * LN2 + lg - x - mu * math.log(x)
    upper = (mu + 1.0) * LN2 + mu * math.log(2.0 + 1.0 / x) + lg - x
    return lower, upper


def check_macdonald_bounds(mu, x: float) -> BoundCheck:
    """Verify the two-sided bound on K_mu(x) for mu >= 1/2."""
    mu = _order(mu)
    x = _check_x(x, "check_macdonald_bounds")
    if mu < 0.5:
        raise DomainError(f"the Macdonald bounds need mu >= 1/2, got {mu!r}")
    logk = _k_log_and_ratio(mu, x)[0]
    lower, upper = macdonald_bounds_log(mu, x)
    return _check(logk - lower, upper - logk)


def gamma_ratio_bound_log(mu: float, n: int) -> tuple[float, float]:
    """(log lhs, log rhs) of Gamma(2mu+n)/Gamma(mu+n)^2 <= rhs."""
    lhs = math.lgamma(2.0 * mu + n) - 2.0 * math.lgamma(mu + n)
    rhs = (
        (mu - 1.0) * LN2
        + math.lgamma(2.0 * mu + 1.0)
        - 2.0 * math.lgamma(mu + 1.0)
        + n * LN2
        - math.lgamma(n)
    )
    return lhs, rhs


def check_gamma_ratio_bound(mu, n: int) -> BoundCheck:
    """Verify Gamma(2mu+n)/Gamma(mu+n)^2 <= 2^{mu-1} Gamma(2mu+1)/Gamma(mu+1)^2 * 2^n/Gamma(n)."""
    mu = _order(mu)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    lhs, rhs = gamma_ratio_bound_log(mu, n)
    return _check(rhs - lhs)


def bessel_i_bound_log(order: float, x: float) -> float:
    """log of (x/2)^order e^x / Gamma(order + 1), an upper bound for I_order(x)."""
    return order * math.log(0.5 * x) + x - math.lgamma(order + 1.0)


def check_bessel_i_bound(mu, x: float) -> BoundCheck:
    """Verify I_mu(x) <= (x/2)^mu e^x / Gamma(mu + 1)."""
    mu = _order(mu)
    x = _check_x(x, "check_bessel_i_bound")
    return _check(bessel_i_bound_log(mu, x) - bessel_i_log(mu, x))


def k_ratio_bound(mu: float, x: float) -> float:
    """8 (2x+1)^{mu+1} mu / x, an upper bound for K_{mu+1}(x)/K_mu(x) when mu >= 1/2."""
    return math.exp(math.log(8.0 * mu / x) + (mu + 1.0) * math.log(2.0 * x + 1.0))


def check_k_ratio_bound(mu, x: float) -> BoundCheck:
    mu = _order(mu)
    x = _check_x(x, "check_k_ratio_bound")
    if mu < 0.5:
        raise DomainError(f"the ratio bound needs mu >= 1/2, got {mu!r}")
    log_bound = math.log(8.0 * mu / x) + (mu + 1.0) * math.log(2.0 * x + 1.0)
    return _check(log_bound - math.log(bessel_k_ratio(mu, x)))


def gegenbauer_bound(n: int, mu: float) -> float:
    """4^n delta_mu Gamma(mu+n+1) / n!, with delta_0 = 1 and delta_mu = 1/Gamma(mu)."""
    log_b = n * math.log(4.0) + math.lgamma(mu + n + 1.0) - math.lgamma(n + 1.0)
    if mu > 0:
        log_b -= math.lgamma(mu)
    return math.exp(log_b)


def check_gegenbauer_bound(n: int, mu, y: float) -> BoundCheck:
    """Verify (mu+n)|C_n^mu(y)| <= 4^n delta_mu Gamma(mu+n+1)/n! for |y| <= 1."""
    mu = _order(mu)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    value = (mu + n) * abs(gegenbauer(n, mu, y))
    bound = gegenbauer_bound(n, mu)
    if value == 0.0:
        return BoundCheck(True, math.inf)
    return BoundCheck(value <= bound * (1 + ROUNDING_TOL), bound / value - 1.0)
