"""Adaptive Gauss-Legendre quadrature.

Integrands take a 1-D array of nodes and return either an array of the same
length or a ``(k, len(nodes))`` array for ``k`` simultaneous integrals over
shared nodes.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NumericalError

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadResult:
    value: float | np.ndarray
    error: float | np.ndarray
    evaluations: int


@lru_cache(maxsize=None)
def _rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def vectorize(fn: Callable[[float], float]) -> Integrand:
    """Lift a scalar function to an integrand over node arrays."""

    def wrapped(nodes: np.ndarray) -> np.ndarray:
        return np.array([fn(float(u)) for u in nodes])

    return wrapped


def _panel(f: Integrand, a: float, b: float, n: int):
    xl, wl = _rule(n)
    xh, wh = _rule(2 * n)
    half, mid = 0.5 * (b - a), 0.5 * (b + a)
    nodes = np.concatenate([mid + half * xl, mid + half * xh])
    vals = np.asarray(f(nodes), dtype=float)
    lo = half * (vals[..., :n] @ wl)
    hi = half * (vals[..., n:] @ wh)
    return hi, np.abs(hi - lo), 3 * n


def gauss_legendre(
    f: Integrand,
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    order: int = 10,
    max_panels: int = 4000,
) -> QuadResult:
    """Globally adaptive Gauss-Legendre on [a, b].

    Each panel is integrated with ``order`` and ``2*order`` points; their
    difference is the panel's error estimate and the panel with the largest
    weighted error is bisected until every component satisfies
    ``error <= max(atol, rtol * |value|)``.
    """
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    value, err, nev = _panel(f, a, b, order)
    panels = [(-float(np.max(err)), a, b, value, err)]
    total, total_err = value, err
    count = 1
    while True:
        target = np.maximum(atol, rtol * np.abs(total))
        if np.all(total_err <= target):
            break
        if count >= max_panels:
            raise NumericalError(
                f"quadrature on [{a}, {b}] did not reach rtol={rtol} within {max_panels} panels"
            )
        _, pa, pb, pv, pe = heapq.heappop(panels)
        pm = 0.5 * (pa + pb)
        v1, e1, n1 = _panel(f, pa, pm, order)
        v2, e2, n2 = _panel(f, pm, pb, order)
        nev += n1 + n2
        count += 1
        total = total - pv + v1 + v2
        total_err = total_err - pe + e1 + e2
        scale = np.maximum(target, 1e-300)
        heapq.heappush(panels, (-float(np.max(e1 / scale)), pa, pm, v1, e1))
        heapq.heappush(panels, (-float(np.max(e2 / scale)), pm, pb, v2, e2))
    # re-sum to shed drift from the running updates
    total = sum(p[3] for p in panels)
    total_err = sum(p[4] for p in panels)
    return QuadResult(total, total_err, nev)


def gauss_legendre_semi_infinite(
    f: Integrand,
    a: float,
    rtol: float = 1e-10,
    step: float = 1.0,
    tail: float = 1e-18,
    order: int = 10,
    max_doublings: int = 200,
) -> QuadResult:
    """Integrate f over [a, inf) on panels of doubling width.

    Stops once a panel contributes less than ``tail`` times the running total.
    """
    lo, width = a, step
    total = 0.0
    total_err = 0.0
    nev = 0
    for _ in range(max_doublings):
        res = gauss_legendre(f, lo, lo + width, rtol=rtol, order=order)
        total = total + res.value
        total_err = total_err + res.error
        nev += res.evaluations
        if np.all(np.abs(res.value) <= tail * np.abs(total)):
            return QuadResult(total, total_err, nev)
        lo += width
        width *= 2.0
        if not math.isfinite(lo):
            break
    raise NumericalError("semi-infinite quadrature did not reach its tail criterion")
