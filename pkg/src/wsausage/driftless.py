"""Driftless sausage profiles and the damped combinations built from them.

L_0^m(t) is the expected volume swept outside a ball of radius r by a driftless
Brownian motion in R^m.  With drift magnitude |v|,

    Sigma_v^m(t)  = exp(-|v|^2 t / 2) L_0^m(t)
    Sigma~_v^m(t) = Sigma(t) + |v|^2 int_0^t Sigma(s) ds
                    + (|v|^4 / 4) int_0^t (t - s) Sigma(s) ds.
"""

from __future__ import annotations

import math
import threading
from typing import Literal

import numpy as np

from .errors import DomainError
from .laplace import InversionConfig, driftless_transform, invert
from .params import ModelParams
from .quadrature import gauss_legendre

DEFAULT_INVERSION = InversionConfig()
QUAD_RTOL_FLOOR = 1e-7


def _closed_form(m: int, r: float, t: float) -> float:
    if m == 1:
        return 2.0 * math.sqrt(2.0 * t / math.pi)
    return 2.0 * math.pi * r * t + 4.0 * r * r * math.sqrt(2.0 * math.pi * t)


class DriftlessProfile:
    """Memoized L_0^m(t) for a fixed (m, r).

    The memo holds exact evaluations only; there is no interpolation.  Reads
    and inserts are guarded by a lock, so one profile can be shared by threads.
    """

    def __init__(self, m: int, r: float, cfg: InversionConfig = DEFAULT_INVERSION):
        if m < 1:
            raise DomainError(f"m must be >= 1, got {m!r}")
        if not r > 0:
            raise DomainError(f"radius must be > 0, got {r!r}")
        self.m = m
        self.r = float(r)
        self.cfg = cfg
        self._memo: dict[float, float] = {}
        self._lock = threading.Lock()

    def _compute(self, t: float) -> float:
        m, r = self.m, self.r
        return invert(lambda lam: driftless_transform(m, r, lam), t, self.cfg)

    def __call__(self, t: float) -> float:
        t = float(t)
        if t < 0:
            raise DomainError(f"t must be >= 0, got {t!r}")
        if t == 0.0:
            return 0.0
        with self._lock:
            hit = self._memo.get(t)
        if hit is not None:
            return hit
        value = self._compute(t)
        with self._lock:
            self._memo[t] = value
        return value

    def __len__(self) -> int:
        with self._lock:
            return len(self._memo)


_profiles: dict[tuple[int, float], DriftlessProfile] = {}
_profiles_lock = threading.Lock()


def profile(m: int, r: float) -> DriftlessProfile:
    key = (m, float(r))
    with _profiles_lock:
        prof = _profiles.get(key)
        if prof is None:
            prof = _profiles[key] = DriftlessProfile(m, r)
        return prof


def driftless_volume(
    m: int, r: float, t: float, method: Literal["auto", "inversion"] = "auto"
) -> float:
    """L_0^m(t); closed forms for m = 1 and m = 3 unless ``method="inversion"``."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    if not r > 0:
        raise DomainError(f"radius must be > 0, got {r!r}")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    if method not in ("auto", "inversion"):
        raise DomainError(f"unknown method {method!r}")
    if t == 0:
        return 0.0
    if method == "auto" and m in (1, 3):
        return _closed_form(m, r, t)
    return profile(m, r)(t)


def sigma(params: ModelParams, m: int, t: float) -> float:
    """exp(-|v|^2 t / 2) L_0^m(t) with the radius of ``params``."""
    return math.exp(-0.5 * params.v_mag**2 * t) * driftless_volume(m, params.r, t)


def tilde_sigma_estimate(params: ModelParams, m: int, t: float, tol: float = 1e-8) -> tuple[float, float]:
    """Sigma~ together with an estimate of its quadrature error.

    Both time integrals share one adaptive Gauss-Legendre pass after the
    substitution s = u^2, which removes the sqrt(s) behavior of L_0^m at 0.
    """
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    head = sigma(params, m, t)
    v2 = params.v_mag**2
    if t == 0 or v2 == 0:
        return head, 0.0

    def integrand(u: np.ndarray) -> np.ndarray:
        s = u * u
        vals = np.array([2.0 * ui * sigma(params, m, si) for ui, si in zip(u, s)])
        return np.vstack([vals, (t - s) * vals])

    # inverted profiles carry ~1e-8 relative noise, so the quadrature cannot resolve below it
    res = gauss_legendre(integrand, 0.0, math.sqrt(t), rtol=max(tol, QUAD_RTOL_FLOOR), order=8, max_panels=400)
    first, second = res.value
    err1, err2 = res.error
    value = head + v2 * first + 0.25 * v2 * v2 * second
    return value, v2 * err1 + 0.25 * v2 * v2 * err2


def tilde_sigma(params: ModelParams, m: int, t: float, tol: float = 1e-8) -> float:
    return tilde_sigma_estimate(params, m, t, tol)[0]
