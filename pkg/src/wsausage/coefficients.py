"""Series coefficients xi_{nu,n}, zeta_{nu,n} and explicit tail majorants.

With x = r|v| and nu = d/2 - 1,

    xi_{nu,n}   = (-1)^n (nu+n) Gamma(2nu+n) I_{nu+n}(x)^2 / n!
    zeta_{nu,n} = (-1)^n (nu+n) Gamma(2nu+n) I_{nu+n}(x) I_{nu+n+1}(x) / n!

except xi_{0,0} = I_0(x)^2 / 2 and zeta_{0,0} = I_0(x) I_1(x) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .params import ModelParams
from .specfun.bessel import bessel_i_log
from .specfun.logscaled import LogScaled

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CoefficientPair:
    n: int
    xi: LogScaled
    zeta: LogScaled


@lru_cache(maxsize=4096)
def _coefficients(nu: float, x: float, n: int) -> CoefficientPair:
    sign = -1 if n % 2 else 1
    log_i0 = bessel_i_log(nu + n, x)
    log_i1 = bessel_i_log(nu + n + 1.0, x)
    if nu == 0.0 and n == 0:
        log_c = -LN2
    else:
        log_c = math.log(nu + n) + math.lgamma(2.0 * nu + n) - math.lgamma(n + 1.0)
    return CoefficientPair(
        n,
        LogScaled(sign, log_c + 2.0 * log_i0),
        LogScaled(sign, log_c + log_i0 + log_i1),
    )


def coefficients(params: ModelParams, n: int) -> CoefficientPair:
    """The pair (xi_{nu,n}, zeta_{nu,n}) for the given parameters."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n!r}")
    if not params.v_mag > 0:
        raise DomainError("the coefficients need a nonzero drift")
    return _coefficients(params.nu, params.rv, n)


@dataclass(frozen=True)
class TailBound:
    """Upper bounds on two series tails starting at index ``start``.

    ``xi_ratio`` bounds sum_{n>=start} |xi_n| K_{nu+n+1}(x)/K_{nu+n}(x) and
    ``zeta`` bounds sum_{n>=start} |zeta_n|.
    """

    start: int
    xi_ratio: float
    zeta: float


def _geometric_tail(log_first: float, ratio: float) -> float:
    if ratio >= 1.0:
        return math.inf
    return math.exp(min(log_first - math.log1p(-ratio), 700.0))


def truncation_bound(params: ModelParams, x: float, start: int) -> TailBound:
    """Explicit tail bounds for the xi and zeta series from index ``start`` on.

    Each term is majorized by combining the Bessel I bound
    I_q(y) <= (y/2)^q e^y / Gamma(q+1) with the ratio bound
    K_{q+1}(x)/K_q(x) <= 8 (2x+1)^{q+1} q / x (valid for q >= 1/2):

        |xi_n| K'/K   <= 8 (2x+1) Gamma(2nu+n) / (n! Gamma(nu+n)^2 x)
                         * ((2x+1) (r|v|)^2 / 4)^{nu+n} e^{2r|v|}
        |zeta_n|      <= Gamma(2nu+n) / (n! Gamma(nu+n) Gamma(nu+n+2))
                         * (r|v|/2)^{2nu+2n+1} e^{2r|v|}

    Consecutive majorant ratios decrease in n, so the tail is bounded by its
    first term over (1 - ratio at ``start``).  Here ``x`` is the argument of
    the Macdonald functions (r * alpha for a transform, r|v| for the long-time
    constant).
    """
    if start < 1:
        raise DomainError(f"tail bounds start at n >= 1, got {start!r}")
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")
    nu, rv = params.nu, params.rv
    if rv == 0.0:
        return TailBound(start, 0.0, 0.0)
    n = start
    q = (2.0 * x + 1.0) * rv * rv / 4.0
    log_xi = (
        math.log(8.0 * (2.0 * x + 1.0) / x)
        + math.lgamma(2.0 * nu + n)
        - math.lgamma(n + 1.0)
        - 2.0 * math.lgamma(nu + n)
        + (nu + n) * math.log(q)
        + 2.0 * rv
    )
    ratio_xi = q * (2.0 * nu + n) / ((n + 1.0) * (nu + n) ** 2)
    y = 0.5 * rv
    log_zeta = (
        math.lgamma(2.0 * nu + n)
        - math.lgamma(n + 1.0)
        - math.lgamma(nu + n)
        - math.lgamma(nu + n + 2.0)
        + (2.0 * nu + 2.0 * n + 1.0) * math.log(y)
        + 2.0 * rv
    )
    ratio_zeta = y * y * (2.0 * nu + n) / ((n + 1.0) * (nu + n) * (nu + n + 2.0))
    return TailBound(start, _geometric_tail(log_xi, ratio_xi), _geometric_tail(log_zeta, ratio_zeta))
