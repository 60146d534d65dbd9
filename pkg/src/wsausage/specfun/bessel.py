"""Modified Bessel functions I_mu and K_mu for real order mu >= 0, x > 0.

Values are returned as :class:`LogScaled` so that very large orders or
arguments neither overflow nor underflow.

Algorithms
----------
K_mu
    Reduce to mu0 = mu - round(mu) in [-1/2, 1/2).  For x <= 2 use Temme's
    series for K_mu0 and K_mu0+1, for x > 2 Steed's continued fraction
    (Temme's CF2).  Half-integer orders use the elementary closed form.  The
    order is then raised by forward recurrence on the ratio
    K_{nu+1}/K_nu, which is the stable direction.
I_mu
    Power series (all terms positive) when x <= max(30, mu).  Otherwise the
    Hankel expansion for the fractional order mu0 in [0, 1), followed by the
    ratios I_{nu+1}/I_nu obtained from a continued fraction at the top order
    and backward recurrence, which is the stable direction for I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError, NumericalError
from .gamma import rgamma_pair
from .logscaled import LogScaled

_EPS = 1.0e-16
_MAXIT = 100_000
_HALF_LOG_PI_2 = 0.5 * math.log(0.5 * math.pi)
_HANKEL_MIN_X = 30.0
_RESCALE = 1e250
_LOG_RESCALE = math.log(_RESCALE)


@dataclass(frozen=True)
class Order:
    """A Bessel or Gegenbauer order mu >= 0."""

    mu: float

    def __post_init__(self):
        if not self.mu >= 0:
            raise DomainError(f"order must be >= 0, got {self.mu!r}")

    @property
    def is_integer(self) -> bool:
        return float(self.mu).is_integer()

    @property
    def is_half_integer(self) -> bool:
        return (self.mu - 0.5).is_integer()

    def __float__(self) -> float:
        return float(self.mu)


def _order(mu) -> float:
    mu = float(mu.mu) if isinstance(mu, Order) else float(mu)
    if not mu >= 0:
        raise DomainError(f"order must be >= 0, got {mu!r}")
    return mu


def _check_x(x: float, name: str) -> float:
    x = float(x)
    if not x > 0:
        raise DomainError(f"{name} requires x > 0, got {x!r}")
    return x


# ---------------------------------------------------------------- K_mu


def _k_temme(mu: float, x: float) -> tuple[float, float]:
    """K_mu(x), K_{mu+1}(x) for |mu| <= 1/2 and 0 < x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < 1e-15 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 + e * e / 6.0 if abs(e) < 1e-5 else math.sinh(e) / e
    gam1, gam2, gampl, gammi = rgamma_pair(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    dd = x2 * x2
    total1 = p
    mu2 = mu * mu
    for i in range(1, _MAXIT):
        ff = (i * ff + p + q) / (i * i - mu2)
        c *= dd / i
        p /= i - mu
        q /= i + mu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * _EPS:
            break
    else:  # pragma: no cover - series always converges for x <= 2
        raise NumericalError("Temme series for K did not converge")
    return total, total1 * 2.0 / x


def _k_steed(mu: float, x: float) -> tuple[float, float]:
    """(log K_mu(x), K_{mu+1}(x)/K_mu(x)) for |mu| <= 1/2 and x > 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:  # pragma: no cover
        raise NumericalError("continued fraction for K did not converge")
    h = a1 * h
    logk = _HALF_LOG_PI_2 - 0.5 * math.log(x) - x - math.log(s)
    return logk, (mu + x + 0.5 - h) / x


def _k_base(mu0: float, x: float) -> tuple[float, float]:
    """(log K_mu0, K_{mu0+1}/K_mu0) for mu0 in [-1/2, 1/2)."""
    if mu0 == -0.5:
        return _HALF_LOG_PI_2 - 0.5 * math.log(x) - x, 1.0
    if x <= 2.0:
        k0, k1 = _k_temme(mu0, x)
        return math.log(k0), k1 / k0
    return _k_steed(mu0, x)


def _k_log_and_ratio(mu: float, x: float) -> tuple[float, float]:
    """(log K_mu(x), K_{mu+1}(x)/K_mu(x))."""
    nl = int(mu + 0.5)
    mu0 = mu - nl
    logk, g = _k_base(mu0, x)
    nu = mu0
    prod = 1.0
    for _ in range(nl):
        prod *= g
        if prod > _RESCALE:
            logk += math.log(prod)
            prod = 1.0
        g = 1.0 / g + 2.0 * (nu + 1.0) / x
        nu += 1.0
    return logk + math.log(prod), g


def bessel_k(mu, x: float) -> LogScaled:
    """K_mu(x) (Macdonald function) as a LogScaled value."""
    mu = _order(mu)
    x = _check_x(x, "bessel_k")
    return LogScaled(1, _k_log_and_ratio(mu, x)[0])


def bessel_k_ratio(mu, x: float) -> float:
    """K_{mu+1}(x) / K_mu(x), evaluated without forming either factor."""
    mu = _order(mu)
    x = _check_x(x, "bessel_k_ratio")
    nl = int(mu + 0.5)
    mu0 = mu - nl
    if mu0 == -0.5:
        g = 1.0
    elif x <= 2.0:
        k0, k1 = _k_temme(mu0, x)
        g = k1 / k0
    else:
        g = _k_steed(mu0, x)[1]
    nu = mu0
    for _ in range(nl):
        g = 1.0 / g + 2.0 * (nu + 1.0) / x
        nu += 1.0
    return g


# ---------------------------------------------------------------- I_mu


def _i_log_series(mu: float, x: float) -> float:
    y = 0.25 * x * x
    term = 1.0
    total = 1.0
    shift = 0.0
    k = 0
    while True:
        k += 1
        ratio = y / (k * (mu + k))
        term *= ratio
        total += term
        if term < total * _EPS and ratio < 0.5:
            break
        if total > _RESCALE:
            total /= _RESCALE
            term /= _RESCALE
            shift += _LOG_RESCALE
        if k > _MAXIT:  # pragma: no cover
            raise NumericalError("power series for I did not converge")
    return mu * math.log(0.5 * x) - math.lgamma(mu + 1.0) + math.log(total) + shift


def _i_log_hankel(mu: float, x: float) -> float:
    """log I_mu(x) from the large-argument expansion; needs x >= 30, mu < 1."""
    m4 = 4.0 * mu * mu
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(1, 200):
        term *= -(m4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(term) > prev:  # asymptotic series started to diverge
            break
        total += term
        prev = abs(term)
        if prev < _EPS * abs(total):
            break
    return x - 0.5 * math.log(2.0 * math.pi * x) + math.log(total)


def _i_ratio_cf(nu: float, x: float) -> float:
    """I_{nu+1}(x)/I_nu(x) by modified Lentz on the continued fraction."""
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for k in range(1, _MAXIT):
        b = 2.0 * (nu + k) / x
        d = b + d
        if d == 0.0:
            d = tiny
        c = b + 1.0 / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _EPS:
            return f
    raise NumericalError("continued fraction for I ratio did not converge")  # pragma: no cover


def _i_log(mu: float, x: float) -> float:
    if mu == 0.5:
        return 0.5 * math.log(2.0 / (math.pi * x)) + x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    if x <= max(_HANKEL_MIN_X, mu):
        return _i_log_series(mu, x)
    n = int(math.floor(mu))
    mu0 = mu - n
    logi = _i_log_hankel(mu0, x)
    if n == 0:
        return logi
    f = _i_ratio_cf(mu - 1.0, x)
    prod = f
    for j in range(n - 1, 0, -1):
        f = 1.0 / (2.0 * (mu0 + j) / x + f)
        prod *= f
        if prod < 1.0 / _RESCALE:
            logi += math.log(prod)
            prod = 1.0
    return logi + math.log(prod)


def bessel_i(mu, x: float) -> LogScaled:
    """I_mu(x) as a LogScaled value."""
    mu = _order(mu)
    x = _check_x(x, "bessel_i")
    return LogScaled(1, _i_log(mu, x))


def bessel_i_log(mu, x: float) -> float:
    """log I_mu(x)."""
    return bessel_i(mu, x).logmag


def bessel_k_log(mu, x: float) -> float:
    """log K_mu(x)."""
    return bessel_k(mu, x).logmag
