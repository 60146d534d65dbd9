"""Gegenbauer polynomials C_n^mu, including the mu = 0 normalization
C_n^0(cos t) = 2 cos(n t) / n."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DomainError
from .bessel import _order

_EXPLICIT_MAX_N = 30


def _rising(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def _explicit_sum(n: int, mu: float, x: float) -> float:
    # exact rational evaluation: the alternating sum cancels heavily near |x| = 1
    if n == 0:
        return 1.0
    q = Fraction(mu)
    two_x = 2 * Fraction(x)
    total = Fraction(0)
    for m in range(n // 2 + 1):
        p = n - 2 * m
        if mu == 0.0:
            coef = Fraction(math.factorial(n - m - 1), math.factorial(m) * math.factorial(p))
        else:
            # Gamma(mu + n - m) / Gamma(mu) is the rising factorial (mu)_{n-m}
            coef = _rising(q, n - m) / (math.factorial(m) * math.factorial(p))
        term = coef * two_x**p
        total += -term if m % 2 else term
    return float(total)


def _recurrence(n: int, mu: float, x: float) -> float:
    if mu == 0.0:
        t_prev, t = 1.0, x
        for k in range(2, n + 1):
            t_prev, t = t, 2.0 * x * t - t_prev
        return 2.0 * t / n
    c_prev, c = 1.0, 2.0 * mu * x
    for k in range(2, n + 1):
        c_prev, c = c, (2.0 * x * (k + mu - 1.0) * c - (k + 2.0 * mu - 2.0) * c_prev) / k
    return c


def gegenbauer(n: int, mu, x: float) -> float:
    """C_n^mu(x) for |x| <= 1.

    Degrees up to 30 use the explicit finite sum evaluated exactly in
    rational arithmetic and rounded once; higher degrees use the three-term recurrence.
    """
    mu = _order(mu)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n!r}")
    if abs(x) > 1.0:
        raise DomainError(f"gegenbauer requires |x| <= 1, got {x!r}")
    if n <= _EXPLICIT_MAX_N:
        return _explicit_sum(n, mu, x)
    return _recurrence(n, mu, x)
