"""Long-time growth rate aleph = lim L(t)/t and its small-drift limit.

With x = r|v| and nu = d/2 - 1, for d >= 3

    aleph = (pi S_{d-2} / |v|^{2nu}) sum_n (-1)^n (nu+n) Gamma(2nu+n) I_{nu+n}(x) / (n! K_{nu+n}(x)),

and for d = 2

    aleph = pi I_0(x)/K_0(x) + 2 pi sum_{n>=1} (-1)^n I_n(x)/K_n(x).

An equivalent form through the series coefficients is

    aleph = (pi S_{2nu} r / |v|^{2nu-1}) sum_n [xi_{nu,n} K_{nu+n+1}(x)/K_{nu+n}(x) + zeta_{nu,n}].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .coefficients import coefficients, truncation_bound
from .errors import DomainError, NumericalError
from .params import ModelParams
from .specfun.bessel import bessel_i_log, bessel_k_log, bessel_k_ratio
from .specfun.gamma import sphere_surface

MAX_TERMS = 500


@dataclass(frozen=True)
class AsymptoticConstant:
    value: float
    terms_used: int
    trunc_bound: float


def _require_drift(params: ModelParams) -> None:
    if not params.v_mag > 0:
        raise DomainError("aleph needs a nonzero drift; its |v| -> 0 limit is aleph_limit")


def _log_coefficient(nu: float, n: int) -> float:
    if nu == 0.0 and n == 0:
        return -math.log(2.0)
    return math.log(nu + n) + math.lgamma(2.0 * nu + n) - math.lgamma(n + 1.0)


def aleph_term_majorant(params: ModelParams, n: int) -> float:
    """Upper bound on |(nu+n) Gamma(2nu+n) I_{nu+n}(x) / (n! K_{nu+n}(x))| for n >= 1.

    x^{2nu} Gamma(2nu+1) e^{2x} / (2^nu Gamma(nu+1)^2) * x^{2n} / (2^n n! (n-1)!)
    """
    if n < 1:
        raise DomainError(f"the majorant is stated for n >= 1, got {n!r}")
    return math.exp(_log_majorant(params.nu, params.rv, n))


def _log_majorant(nu: float, x: float, n: int) -> float:
    return (
        2.0 * nu * math.log(x)
        + math.lgamma(2.0 * nu + 1.0)
        + 2.0 * x
        - nu * math.log(2.0)
        - 2.0 * math.lgamma(nu + 1.0)
        + 2.0 * n * math.log(x)
        - n * math.log(2.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n)
    )


def _majorant_tail(nu: float, x: float, start: int) -> float:
    ratio = x * x / (2.0 * (start + 1.0) * start)
    if ratio >= 1.0:
        return math.inf
    return math.exp(_log_majorant(nu, x, start)) / (1.0 - ratio)


def aleph(params: ModelParams, tol: float = 1e-14, fixed_terms: int | None = None) -> AsymptoticConstant:
    """The growth rate by its defining series, truncated with the explicit majorant."""
    _require_drift(params)
    nu, x = params.nu, params.rv
    pre = math.pi * sphere_surface(params.d - 2) / params.v_mag ** (2.0 * nu)
    terms: list[float] = []
    for n in range(fixed_terms if fixed_terms is not None else MAX_TERMS):
        log_mag = _log_coefficient(nu, n) + bessel_i_log(nu + n, x) - bessel_k_log(nu + n, x)
        terms.append((-1.0) ** n * math.exp(log_mag))
        value = pre * math.fsum(terms)
        bound = pre * _majorant_tail(nu, x, n + 1)
        if (n + 1 == fixed_terms) if fixed_terms is not None else bound <= tol * abs(value):
            return AsymptoticConstant(value, n + 1, bound)
    raise NumericalError(f"aleph series did not converge within {MAX_TERMS} terms")


def aleph_phi_form(params: ModelParams, tol: float = 1e-14, fixed_terms: int | None = None) -> AsymptoticConstant:
    """The growth rate through xi, zeta and K-ratios at x = r|v|."""
    _require_drift(params)
    nu, x, v = params.nu, params.rv, params.v_mag
    pre = math.pi * sphere_surface(params.d - 2) * params.r * v ** (1.0 - 2.0 * nu)
    terms: list[float] = []
    for n in range(fixed_terms if fixed_terms is not None else MAX_TERMS):
        c = coefficients(params, n)
        terms.append(float(c.xi) * bessel_k_ratio(nu + n, x))
        terms.append(float(c.zeta))
        value = pre * math.fsum(terms)
        tail = truncation_bound(params, x, n + 1)
        bound = pre * (tail.xi_ratio + tail.zeta)
        if (n + 1 == fixed_terms) if fixed_terms is not None else bound <= tol * abs(value):
            return AsymptoticConstant(value, n + 1, bound)
    raise NumericalError(f"aleph series did not converge within {MAX_TERMS} terms")


def newtonian_capacity(d: int, r: float) -> float:
    """(d-2) S_{d-1} r^{d-2} / 2."""
    if not isinstance(d, int) or d < 3:
        raise DomainError(f"the capacity limit is defined here for d >= 3, got {d!r}")
    if not r > 0:
        raise DomainError(f"radius must be > 0, got {r!r}")
    return 0.5 * (d - 2) * sphere_surface(d - 1) * r ** (d - 2)


def aleph_limit(d: int, r: float) -> float:
    """Value of aleph as |v| -> 0: the Newtonian capacity for d >= 3, zero for d = 2."""
    if d == 2:
        if not r > 0:
            raise DomainError(f"radius must be > 0, got {r!r}")
        return 0.0
    return newtonian_capacity(d, r)


def aleph_zero_limit(d: int, r: float, v_grid: Sequence[float], tol: float = 1e-14) -> list[float]:
    """aleph along a strictly decreasing grid of drift magnitudes."""
    grid = list(v_grid)
    if any(v <= 0 for v in grid):
        raise DomainError("drift magnitudes must be > 0")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise DomainError("v_grid must be strictly decreasing")
    return [aleph(ModelParams(d, r, v), tol).value for v in grid]
