"""Laplace-domain evaluators and a real-axis numerical inverse.

Notation: alpha = sqrt(2 lambda + |v|^2) and

    F_mu(lambda) = alpha K_{mu+1}(r alpha) / (lambda^2 K_mu(r alpha)).

The transform of the expected swept volume outside the ball is

    (pi S_{2nu} r / |v|^{2nu}) sum_n xi_{nu,n} F_{nu+n}(lambda)
        + (pi S_{2nu} r / (lambda^2 |v|^{2nu-1})) sum_n zeta_{nu,n}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal

import mpmath

from .coefficients import coefficients, truncation_bound
from .errors import DomainError, NumericalError
from .params import ModelParams
from .specfun.bessel import bessel_k_ratio
from .specfun.gamma import sphere_surface

LAMBDA_FLOOR = 1e-12
MAX_TERMS = 500
_EXTENDED_DPS = 40
LN2 = math.log(2.0)


@dataclass(frozen=True)
class TransformPoint:
    """A Laplace variable together with alpha = sqrt(2 lambda + |v|^2)."""

    lam: float
    v_mag: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"the Laplace variable must be > 0, got {self.lam!r}")

    @property
    def alpha(self) -> float:
        return math.sqrt(2.0 * self.lam + self.v_mag * self.v_mag)


@dataclass(frozen=True)
class InversionConfig:
    """Gaver-Stehfest settings.

    In ``extended`` mode nodes, weights and the weighted sum are carried in
    40-digit arithmetic and the transform receives high-precision arguments.
    Transforms that only compute in double precision gain nothing from it:
    the weights reach 1e14 at order 24, so double-precision samples lose
    that many digits in the combination.
    """

    order: int = 16
    precision_mode: Literal["standard", "extended"] = "standard"

    def __post_init__(self):
        if self.order % 2 or not 8 <= self.order <= 24:
            raise DomainError(f"order must be even and in [8, 24], got {self.order!r}")
        if self.precision_mode not in ("standard", "extended"):
            raise DomainError(f"unknown precision mode {self.precision_mode!r}")


def _point(p, v_mag: float) -> TransformPoint:
    if isinstance(p, TransformPoint):
        return p
    return TransformPoint(float(p), v_mag)


def f_mu(params: ModelParams, mu: float, p: TransformPoint | float) -> float:
    """F_mu(lambda) for the given parameters."""
    p = _point(p, params.v_mag)
    lam = max(p.lam, LAMBDA_FLOOR)
    alpha = math.sqrt(2.0 * lam + params.v_mag**2)
    return alpha * bessel_k_ratio(mu, params.r * alpha) / (lam * lam)


def driftless_transform(m: int, r: float, lam: float) -> float:
    """Transform of the driftless swept volume in dimension m.

    S_{m-1} r^{m-1} K_{m/2}(r sqrt(2 lambda)) / (sqrt(2 lambda^3) K_{m/2-1}(r sqrt(2 lambda))).
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    if not lam > 0:
        raise DomainError(f"the Laplace variable must be > 0, got {lam!r}")
    lam = max(lam, LAMBDA_FLOOR)
    z = math.sqrt(2.0 * lam)
    # K_{1/2} = K_{-1/2}, so the m = 1 ratio is exactly 1
    ratio = 1.0 if m == 1 else bessel_k_ratio(0.5 * m - 1.0, r * z)
    return sphere_surface(m - 1) * r ** (m - 1) * ratio / (z * lam)


@dataclass(frozen=True)
class TransformValue:
    value: float
    trunc_bound: float
    terms_used: int


def transform_L_series(
    params: ModelParams, lam: float, tol: float = 1e-12, fixed_terms: int | None = None
) -> TransformValue:
    """Transform of the drifted swept volume, with a certified truncation bound.

    Terms are added until the explicit tail majorants of both series put the
    remainder below ``tol`` times the partial sum, or exactly ``fixed_terms``
    terms are used.
    """
    if not params.v_mag > 0:
        raise DomainError("the drifted transform needs |v| > 0; use driftless_transform")
    if not lam > 0:
        raise DomainError(f"the Laplace variable must be > 0, got {lam!r}")
    lam = max(lam, LAMBDA_FLOOR)
    nu, r, v = params.nu, params.r, params.v_mag
    alpha = math.sqrt(2.0 * lam + v * v)
    x = r * alpha
    pre = math.pi * sphere_surface(params.d - 2) * r / v ** (2.0 * nu)
    pre_xi = pre * alpha / (lam * lam)
    pre_zeta = pre * v / (lam * lam)
    terms = []
    for n in range(fixed_terms if fixed_terms is not None else MAX_TERMS):
        c = coefficients(params, n)
        terms.append(pre_xi * float(c.xi) * bessel_k_ratio(nu + n, x))
        terms.append(pre_zeta * float(c.zeta))
        value = math.fsum(terms)
        tail = truncation_bound(params, x, n + 1)
        bound = pre_xi * tail.xi_ratio + pre_zeta * tail.zeta
        if (n + 1 == fixed_terms) if fixed_terms is not None else bound <= tol * abs(value):
            return TransformValue(value, bound, n + 1)
    raise NumericalError(f"transform series did not converge within {MAX_TERMS} terms")


def transform_L(params: ModelParams, lam: float, tol: float = 1e-12) -> float:
    return transform_L_series(params, lam, tol).value


# ------------------------------------------------------------ inversion


@lru_cache(maxsize=None)
def stehfest_weights_exact(order: int) -> tuple[Fraction, ...]:
    half = order // 2
    weights = []
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            s += Fraction(
                j**half * math.factorial(2 * j),
                math.factorial(half - j)
                * math.factorial(j)
                * math.factorial(j - 1)
                * math.factorial(k - j)
                * math.factorial(2 * j - k),
            )
        weights.append(s if (k + half) % 2 == 0 else -s)
    return tuple(weights)


@lru_cache(maxsize=None)
def stehfest_weights(order: int) -> tuple[float, ...]:
    return tuple(float(w) for w in stehfest_weights_exact(order))


def stehfest_nodes(t: float, order: int) -> list[float]:
    """Laplace variables at which the inverter samples for time t."""
    a = LN2 / t
    return [k * a for k in range(1, order + 1)]


def combine(values: list[float], t: float, cfg: InversionConfig) -> float:
    """Gaver-Stehfest combination of transform samples taken at stehfest_nodes."""
    for fv in values:
        if not math.isfinite(fv):
            raise NumericalError("transform returned a non-finite value during inversion")
    total = math.fsum(w * fv for w, fv in zip(stehfest_weights(cfg.order), values))
    return LN2 / t * total


def _invert_extended(f: Callable, t: float, order: int) -> float:
    with mpmath.workdps(_EXTENDED_DPS):
        a = mpmath.log(2) / mpmath.mpf(t)
        total = mpmath.mpf(0)
        for k, w in enumerate(stehfest_weights_exact(order), start=1):
            fv = f(k * a)
            if not mpmath.isfinite(fv):
                raise NumericalError("transform returned a non-finite value during inversion")
            total += mpmath.mpf(w.numerator) / w.denominator * fv
        return float(a * total)


def invert(f: Callable[[float], float], t: float, cfg: InversionConfig | None = None) -> float:
    """Gaver-Stehfest estimate of the inverse transform of f at time t."""
    cfg = cfg or InversionConfig()
    if not t > 0:
        raise DomainError(f"inversion needs t > 0, got {t!r}")
    if cfg.precision_mode == "extended":
        return _invert_extended(f, t, cfg.order)
    values = [f(lam) for lam in stehfest_nodes(t, cfg.order)]
    return combine(values, t, cfg)


def inversion_error_estimate(
    f: Callable[[float], float], t: float, cfg: InversionConfig | None = None
) -> tuple[float, float]:
    """Inverse at order N together with |estimate(N) - estimate(N-2)|."""
    cfg = cfg or InversionConfig()
    value = invert(f, t, cfg)
    lower = InversionConfig(max(cfg.order - 2, 8), cfg.precision_mode)
    if lower.order == cfg.order:
        lower = InversionConfig(cfg.order + 2, cfg.precision_mode)
    return value, abs(value - invert(f, t, lower))
