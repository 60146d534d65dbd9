"""Gamma function helpers and sphere/ball constants."""

from __future__ import annotations

import math

from ..errors import DomainError
from .logscaled import LogScaled

# Taylor coefficients c_k of 1/Gamma(z) = sum_{k>=1} c_k z^k about z = 0.
_RGAMMA_TAYLOR = (
    1.0,
    0.5772156649015328606065,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.1665386113822914895017,
    -0.04219773455554433674821,
    -0.009621971527876973562115,
    0.007218943246663099542395,
    -0.001165167591859065112114,
    -0.0002152416741149509728157,
    0.0001280502823881161861532,
    -0.00002013485478078823865569,
    -0.000001250493482142670657345,
    0.000001133027231981695882374,
    -2.05633841697760710345e-7,
    6.116095104481415817862e-9,
    5.002007644469222930056e-9,
    -1.181274570487020144588e-9,
    1.043426711691100510492e-10,
    7.78226343990507125405e-12,
    -3.696805618642205708188e-12,
    5.100370287454475979015e-13,
    -2.058326053566506783222e-14,
    -5.34812253942301798237e-15,
    1.226778628238260790159e-15,
    -1.181259301697458769514e-16,
    1.18669225475160033258e-18,
    1.412380655318031781556e-18,
)


def gamma_ln(z: float) -> float:
    """Natural log of Gamma(z) for z > 0."""
    if not z > 0:
        raise DomainError(f"gamma_ln requires z > 0, got {z!r}")
    return math.lgamma(z)


def gamma_ls(z: float) -> LogScaled:
    """Gamma(z) for z > 0 as a LogScaled value."""
    return LogScaled(1, gamma_ln(z))


def rgamma_pair(mu: float) -> tuple[float, float, float, float]:
    """Temme's auxiliary gamma quantities for |mu| <= 1/2.

    Returns ``(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))`` with
    ``gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)`` and
    ``gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2``, evaluated from the
    Taylor series of 1/Gamma so that gam1 has no cancellation near mu = 0.
    """
    if abs(mu) > 0.5 + 1e-15:
        raise DomainError(f"rgamma_pair requires |mu| <= 1/2, got {mu!r}")
    mu2 = mu * mu
    odd = 0.0
    even = 0.0
    # Horner over even powers of mu, highest first.
    for k in range(len(_RGAMMA_TAYLOR), 0, -1):
        c = _RGAMMA_TAYLOR[k - 1]
        if k % 2:
            odd = odd * mu2 + c
        else:
            even = even * mu2 + c
    gampl = odd + mu * even
    gammi = odd - mu * even
    return -even, odd, gampl, gammi


def sphere_surface(m: int) -> float:
    """S_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2), the area of the unit m-sphere."""
    if m < 0:
        raise DomainError(f"sphere_surface requires m >= 0, got {m!r}")
    h = 0.5 * (m + 1)
    return 2.0 * math.exp(h * math.log(math.pi) - math.lgamma(h))


def ball_volume(d: int, r: float) -> float:
    """Volume of the d-dimensional ball of radius r."""
    if d < 1:
        raise DomainError(f"ball_volume requires d >= 1, got {d!r}")
    if not r > 0:
        raise DomainError(f"ball_volume requires r > 0, got {r!r}")
    h = 0.5 * d
    return math.exp(h * math.log(math.pi) + d * math.log(r) - math.lgamma(h + 1.0))
