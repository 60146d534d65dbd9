"""Expected volume of the drifted Wiener sausage around a ball.

E[vol W(t)] = vol(D) + L(t), where for nu = d/2 - 1

    L(t) = (2 pi S_{2nu} / |v|^{2nu}) sum_n xi_{nu,n} Sigma~^{d+2n}(t) / (S_{d+2n-1} r^{d+2n-2})
           + pi S_{2nu} r |v|^{1-2nu} t sum_n zeta_{nu,n}

(the series route), or L is recovered by numerically inverting its Laplace
transform (the inversion route).  Both attach an error budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .coefficients import CoefficientPair, TailBound, coefficients, truncation_bound
from .driftless import tilde_sigma_estimate
from .errors import DomainError, NumericalError
from .laplace import InversionConfig, invert, stehfest_nodes, stehfest_weights, transform_L_series
from .params import ModelParams
from .specfun.gamma import ball_volume, sphere_surface

MAX_TERMS = 500
MIN_DRIFT = 1e-8

__all__ = [
    "CoefficientPair",
    "ModelParams",
    "TailBound",
    "VolumeResult",
    "coefficients",
    "expected_volume",
    "invert_transform",
    "truncation_bound",
]


@dataclass(frozen=True)
class VolumeResult:
    """E[vol W(t)] with its error budget.

    ``value`` is the expected volume including the ball, ``L`` the part swept
    outside it.  ``trunc_bound`` is a certified bound on dropped series terms;
    ``quad_bound`` estimates quadrature (series route) or inversion error.
    """

    value: float
    L: float
    trunc_bound: float
    quad_bound: float
    terms_used: int
    route: Literal["series", "inversion"]
    params: ModelParams | None = None
    t: float | None = None


def _check(params: ModelParams, t: float, tol: float) -> None:
    if params.v_mag < MIN_DRIFT:
        raise DomainError(
            f"drift magnitude {params.v_mag!r} is below {MIN_DRIFT}; use driftless_volume for |v| = 0"
        )
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")


def _prefactor(params: ModelParams) -> float:
    # pi S_{2nu} r / |v|^{2nu}, common to both series
    return math.pi * sphere_surface(params.d - 2) * params.r / params.v_mag ** (2.0 * params.nu)


def expected_volume(
    params: ModelParams,
    t: float,
    tol: float = 1e-6,
    max_terms: int = MAX_TERMS,
    fixed_terms: int | None = None,
) -> VolumeResult:
    """Series route.

    Terms are added until the explicit tail majorants put the dropped part of
    both series below ``tol`` times the returned volume.  Each xi-term needs
    one Sigma~ evaluation (an adaptive quadrature over inverted driftless
    profiles); its estimated error goes into ``quad_bound``.  With
    ``fixed_terms`` exactly that many terms are summed and the bound for
    the remainder is reported whatever its size.
    """
    _check(params, t, tol)
    vol_d = ball_volume(params.d, params.r)
    if t == 0:
        return VolumeResult(vol_d, 0.0, 0.0, 0.0, 0, "series", params, t)
    d, r, v = params.d, params.r, params.v_mag
    pre = _prefactor(params)
    lin = pre * v * t
    # time-domain tail: g(t) <= e * lam * G(lam) at lam = 1/t for nondecreasing g >= 0
    alpha_t = math.sqrt(2.0 / t + v * v)
    x_t = r * alpha_t
    tail_scale = pre * math.e * t * alpha_t

    xi_terms: list[float] = []
    zeta_terms: list[float] = []
    quad_err = 0.0
    quad_tol = 0.1 * tol
    for n in range(fixed_terms if fixed_terms is not None else max_terms):
        c = coefficients(params, n)
        m = d + 2 * n
        ts, ts_err = tilde_sigma_estimate(params, m, t, quad_tol)
        # 2 Sigma~ / (S_{m-1} r^{m-1}) is the inverse transform of F_{m/2-1}
        scale = 2.0 / (sphere_surface(m - 1) * r ** (m - 1))
        xi = float(c.xi)
        xi_terms.append(pre * xi * scale * ts)
        zeta_terms.append(lin * float(c.zeta))
        quad_err += abs(pre * xi * scale) * ts_err
        L = math.fsum(xi_terms) + math.fsum(zeta_terms)
        tail = truncation_bound(params, x_t, n + 1)
        bound = tail_scale * tail.xi_ratio + lin * tail.zeta
        done = n + 1 == fixed_terms if fixed_terms is not None else bound <= tol * abs(vol_d + L)
        if done:
            return VolumeResult(vol_d + L, L, bound, quad_err, n + 1, "series", params, t)
    raise NumericalError(f"series route: truncation budget not met within {max_terms} terms")


def invert_transform(
    params: ModelParams, t: float, tol: float = 1e-6, cfg: InversionConfig | None = None
) -> VolumeResult:
    """Inversion route: Gaver-Stehfest applied to the transform of L.

    ``trunc_bound`` propagates the transform truncation bounds through the
    inversion weights; ``quad_bound`` is the change from dropping to order N-2.
    """
    _check(params, t, tol)
    if t == 0:
        raise DomainError("the inversion route needs t > 0")
    cfg = cfg or InversionConfig()
    series_tol = min(tol, 1e-13)
    vol_d = ball_volume(params.d, params.r)

    def run(order: int):
        vals = [transform_L_series(params, lam, series_tol) for lam in stehfest_nodes(t, order)]
        weights = stehfest_weights(order)
        total = math.fsum(w * tv.value for w, tv in zip(weights, vals))
        bound = math.fsum(abs(w) * tv.trunc_bound for w, tv in zip(weights, vals))
        return math.log(2.0) / t * total, math.log(2.0) / t * bound, max(tv.terms_used for tv in vals)

    if cfg.precision_mode == "extended":
        L = invert(lambda lam: transform_L_series(params, float(lam), series_tol).value, t, cfg)
        _, bound, terms = run(cfg.order)
    else:
        L, bound, terms = run(cfg.order)
    lower_order = cfg.order - 2 if cfg.order > 8 else cfg.order + 2
    L_lower, _, _ = run(lower_order)
    if not math.isfinite(L):
        raise NumericalError("inversion route produced a non-finite value")
    return VolumeResult(vol_d + L, L, bound, abs(L - L_lower), terms, "inversion", params, t)
