"""Closed forms of two Bessel-function integrals.

``bessel_cross_integral``
    int_c^inf x I_mu(a x) K_mu(b x) dx for 0 < a < b.
``gegenbauer_bessel_integral``
    int_0^pi exp(-z cos t) C_n^mu(cos t) sin^{2 mu} t dt.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from .bessel import _k_log_and_ratio, _order, bessel_i_log

_LOG_SQRT_PI = 0.5 * math.log(math.pi)


def bessel_cross_integral(a: float, b: float, c: float, mu) -> float:
    """[ac I_{mu+1}(ac) K_mu(bc) + bc I_mu(ac) K_{mu+1}(bc)] / (b^2 - a^2)."""
    mu = _order(mu)
    if not 0 < a < b:
        raise DomainError(f"need 0 < a < b, got a={a!r}, b={b!r}")
    if not c > 0:
        raise DomainError(f"need c > 0, got c={c!r}")
    ac, bc = a * c, b * c
    logk, ratio = _k_log_and_ratio(mu, bc)
    t1 = math.log(ac) + bessel_i_log(mu + 1.0, ac) + logk
    t2 = math.log(bc) + bessel_i_log(mu, ac) + logk + math.log(ratio)
    hi = max(t1, t2)
    log_num = hi + math.log(math.exp(t1 - hi) + math.exp(t2 - hi))
    return math.exp(log_num - math.log((b - a) * (b + a)))


def gegenbauer_bessel_integral(n: int, mu, z: float) -> float:
    """Closed form of int_0^pi e^{-z cos t} C_n^mu(cos t) sin^{2mu} t dt.

    For mu > 0 this is
    2^mu (-1)^n sqrt(pi) Gamma(mu+1/2) Gamma(2mu+n) I_{mu+n}(z) / (n! Gamma(2mu) z^mu);
    for mu = 0 it is 2 pi (-1)^n I_n(z) / n (n >= 1) and pi I_0(z) (n = 0).
    """
    mu = _order(mu)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n!r}")
    if not z > 0:
        raise DomainError(f"need z > 0, got z={z!r}")
    sign = -1.0 if n % 2 else 1.0
    if mu == 0.0:
        log_v = math.log(math.pi) + bessel_i_log(n, z)
        if n:
            log_v += math.log(2.0 / n)
        return sign * math.exp(log_v)
    log_v = (
        mu * math.log(2.0)
        + _LOG_SQRT_PI
        + math.lgamma(mu + 0.5)
        + math.lgamma(2.0 * mu + n)
        + bessel_i_log(mu + n, z)
        - math.lgamma(n + 1.0)
        - math.lgamma(2.0 * mu)
        - mu * math.log(z)
    )
    return sign * math.exp(log_v)
