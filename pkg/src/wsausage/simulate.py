"""Monte Carlo oracle for the expected sausage volume.

Each path is a random walk with Gaussian increments plus drift on a uniform
time grid.  Its sausage is replaced by the union of capsules around the
polyline segments, whose volume is estimated by hit-or-miss sampling in the
bounding box with an exact point-to-segment test.  The polyline sausage is
contained in the continuous one, so the discretization bias is downward.

Reproducibility: path i draws its increments from the substream
SeedSequence(seed, spawn_key=(i, 0)) and its sample points from (i, 1 + k);
per-path results are reduced in index order, so the estimate does not depend
on the number of worker threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError

BLOCK = 64
THREADS_ENV = "WSAUSAGE_THREADS"


@dataclass(frozen=True)
class PathConfig:
    d: int
    r: float
    t: float
    drift: tuple[float, ...]
    dt: float | None = None
    n_paths: int = 2000
    n_points: int = 4000
    seed: int = 0

    def __post_init__(self):
        if self.d not in (2, 3):
            raise DomainError(f"the simulator supports d in {{2, 3}}, got {self.d!r}")
        object.__setattr__(self, "drift", tuple(float(c) for c in self.drift))
        if len(self.drift) != self.d:
            raise DomainError(f"drift needs {self.d} components, got {len(self.drift)}")
        if not self.r > 0:
            raise DomainError(f"radius must be > 0, got {self.r!r}")
        if not self.t >= 0:
            raise DomainError(f"t must be >= 0, got {self.t!r}")
        if self.dt is None:
            object.__setattr__(self, "dt", self.t * 1e-4 if self.t > 0 else 1.0)
        if not self.dt > 0 or (self.t > 0 and self.dt > self.t):
            raise DomainError(f"need 0 < dt <= t, got dt={self.dt!r}, t={self.t!r}")
        if self.n_paths < 1 or self.n_points < 1:
            raise DomainError("n_paths and n_points must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    @property
    def n_steps(self) -> int:
        return 0 if self.t == 0 else max(1, round(self.t / self.dt))

    @property
    def v_mag(self) -> float:
        return math.hypot(*self.drift)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    ci95: tuple[float, float]
    n_paths: int
    seed: int
    # the polyline sausage is a subset of the true one
    bias_note: str = "one-sided: discretization underestimates"
    samples: tuple[float, ...] = field(default=(), repr=False)

    @classmethod
    def from_samples(cls, values: Sequence[float], seed: int) -> "McEstimate":
        n = len(values)
        mean = math.fsum(values) / n
        var = math.fsum((x - mean) ** 2 for x in values) / (n - 1) if n > 1 else 0.0
        se = math.sqrt(var / n)
        return cls(mean, se, (mean - 1.96 * se, mean + 1.96 * se), n, seed, samples=tuple(values))

    def z_score(self, reference: float) -> float:
        if self.stderr == 0:
            return 0.0 if self.mean == reference else math.inf
        return (self.mean - reference) / self.stderr


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=key)))


def sample_path(cfg: PathConfig, path_index: int, n_steps: int | None = None) -> np.ndarray:
    """Polyline of shape (n_steps + 1, d) starting at the origin."""
    n = cfg.n_steps if n_steps is None else n_steps
    h = cfg.t / n if n else 0.0
    rng = _rng(cfg.seed, path_index, 0)
    inc = rng.standard_normal((n, cfg.d)) * math.sqrt(h) + np.asarray(cfg.drift) * h
    path = np.zeros((n + 1, cfg.d))
    np.cumsum(inc, axis=0, out=path[1:])
    return path


def _segment_hits(points: np.ndarray, a: np.ndarray, b: np.ndarray, r: float) -> np.ndarray:
    ab = b - a
    ap = points - a
    denom = np.einsum("ij,ij->i", ab, ab)
    s = np.where(denom > 0, np.einsum("ij,ij->i", ap, ab) / np.where(denom > 0, denom, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    diff = ap - s[:, None] * ab
    return np.einsum("ij,ij->i", diff, diff) <= r * r


def capsule_union_hits(polyline: np.ndarray, points: np.ndarray, r: float) -> np.ndarray:
    """Boolean mask: which points lie within distance r of the polyline."""
    P = np.asarray(polyline, dtype=float)
    X = np.asarray(points, dtype=float)
    n_seg = len(P) - 1
    if n_seg <= 0:
        return np.einsum("ij,ij->i", X - P[0], X - P[0]) <= r * r
    # block prefilter: every segment of a block lies in a ball of radius rho about its center
    nb = -(-n_seg // BLOCK)
    idx = np.minimum(np.arange(nb)[:, None] * BLOCK + np.arange(BLOCK + 1)[None, :], n_seg)
    Q = P[idx]
    centers = 0.5 * (Q.min(axis=1) + Q.max(axis=1))
    rho = math.sqrt(float(np.max(np.sum((Q - centers[:, None, :]) ** 2, axis=-1))))
    dist, _ = cKDTree(centers).query(X, distance_upper_bound=r + rho)
    hit = dist <= r - rho
    amb = np.flatnonzero(~hit & (dist <= r + rho))
    if amb.size == 0:
        return hit
    # a point within r of a segment of length <= h is within sqrt(r^2 + h^2/4) of an endpoint
    seg = np.diff(P, axis=0)
    h = math.sqrt(float(np.max(np.einsum("ij,ij->i", seg, seg))))
    reach = math.sqrt(r * r + 0.25 * h * h)
    tree = cKDTree(P)
    dv, _ = tree.query(X[amb], distance_upper_bound=reach)
    hit[amb[dv <= r]] = True
    shell = amb[(dv > r) & (dv <= reach)]
    if shell.size == 0:
        return hit
    # candidate segments are those touching a vertex within reach; test all pairs at once
    near = tree.query_ball_point(X[shell], reach)
    counts = np.fromiter((len(v) for v in near), dtype=np.intp, count=len(near))
    verts = np.concatenate([np.asarray(v, dtype=np.intp) for v in near])
    owner = np.repeat(shell, counts)
    owner = np.concatenate([owner, owner])
    segs = np.clip(np.concatenate([verts - 1, verts]), 0, n_seg - 1)
    ok = _segment_hits(X[owner], P[segs], P[segs + 1], r)
    hit[owner[ok]] = True
    return hit


def sausage_volume_one_path(polyline: np.ndarray, r: float, n_points: int, rng: np.random.Generator) -> float:
    """Hit-or-miss estimate of the capsule-union volume around ``polyline``."""
    P = np.atleast_2d(np.asarray(polyline, dtype=float))
    lo = P.min(axis=0) - r
    hi = P.max(axis=0) + r
    X = lo + (hi - lo) * rng.random((n_points, P.shape[1]))
    box = float(np.prod(hi - lo))
    return box * float(np.count_nonzero(capsule_union_hits(P, X, r))) / n_points


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _one(cfg: PathConfig, i: int) -> float:
    return sausage_volume_one_path(sample_path(cfg, i), cfg.r, cfg.n_points, _rng(cfg.seed, i, 1))


def _parallel_map(fn, n: int, workers: int | None) -> list:
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n)))


def estimate_expected_volume(cfg: PathConfig, workers: int | None = None) -> McEstimate:
    """Mean capsule-union volume over ``cfg.n_paths`` independent paths."""
    values = _parallel_map(lambda i: _one(cfg, i), cfg.n_paths, workers)
    return McEstimate.from_samples(values, cfg.seed)


def slope_check(cfg: PathConfig, t_values: Sequence[float], workers: int | None = None) -> list[McEstimate]:
    """vol(W(t))/t per path for each t in ``t_values`` along shared paths.

    Paths are simulated once up to max(t_values) with step ``cfg.dt`` and
    truncated for the smaller times.
    """
    ts = [float(t) for t in t_values]
    if not ts or any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise DomainError("t_values must be positive and strictly increasing")
    full = replace(cfg, t=ts[-1])
    h = full.t / full.n_steps
    cuts = [max(1, round(t / h)) for t in ts]

    def run(i: int) -> list[float]:
        path = sample_path(full, i)
        return [
            sausage_volume_one_path(path[: c + 1], cfg.r, cfg.n_points, _rng(cfg.seed, i, 1 + k)) / t
            for k, (c, t) in enumerate(zip(cuts, ts))
        ]

    per_path = _parallel_map(run, cfg.n_paths, workers)
    return [McEstimate.from_samples([row[k] for row in per_path], cfg.seed) for k in range(len(ts))]
