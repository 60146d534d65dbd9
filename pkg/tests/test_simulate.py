import math

import numpy as np
import pytest

from wsausage.asymptotics import aleph
from wsausage.errors import DomainError
from wsausage.params import ModelParams
from wsausage.simulate import (
    THREADS_ENV,
    McEstimate,
    PathConfig,
    capsule_union_hits,
    default_workers,
    estimate_expected_volume,
    sample_path,
    sausage_volume_one_path,
    slope_check,
)


def brute_hits(P, X, r):
    out = np.zeros(len(X), dtype=bool)
    for a, b in zip(P[:-1], P[1:]):
        ab = b - a
        s = np.clip(((X - a) @ ab) / max(ab @ ab, 1e-300), 0, 1)
        out |= np.sum((X - a - s[:, None] * ab) ** 2, axis=1) <= r * r
    return out


def hit_or_miss_z(P, r, n_points, exact, seed):
    """z-score of one hit-or-miss estimate against a known volume."""
    P = np.atleast_2d(P)
    box = float(np.prod(P.max(axis=0) - P.min(axis=0) + 2 * r))
    est = sausage_volume_one_path(P, r, n_points, np.random.default_rng(seed))
    p = exact / box
    return (est - exact) / (box * math.sqrt(p * (1 - p) / n_points))


class TestPathConfig:
    def test_defaults(self):
        cfg = PathConfig(3, 1.0, 2.0, (0.5, 0, 0))
        assert cfg.dt == pytest.approx(2e-4) and cfg.n_steps == 10000
        assert cfg.v_mag == 0.5 and cfg.drift == (0.5, 0.0, 0.0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(d=4, r=1.0, t=1.0, drift=(0, 0, 0, 0)),
            dict(d=2, r=1.0, t=1.0, drift=(0, 0, 0)),
            dict(d=2, r=0.0, t=1.0, drift=(0, 0)),
            dict(d=2, r=1.0, t=1.0, drift=(0, 0), dt=2.0),
            dict(d=2, r=1.0, t=1.0, drift=(0, 0), n_paths=0),
            dict(d=2, r=1.0, t=1.0, drift=(0, 0), seed=-1),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            PathConfig(**kwargs)


class TestSamplePath:
    def test_increment_statistics(self):
        dt = 1e-5
        cfg = PathConfig(2, 1.0, 1.0, (0.0, 0.0), dt=dt, seed=11)
        inc = np.diff(sample_path(cfg, 0), axis=0)
        n = len(inc)
        assert n == 100_000
        for k in range(2):
            assert abs(inc[:, k].mean()) <= 4 * math.sqrt(dt / n)
            # the sample variance has standard deviation ~ dt sqrt(2/n)
            assert abs(inc[:, k].var() - dt) <= 4 * dt * math.sqrt(2 / n)

    def test_endpoint_mean(self):
        drift, t, n = (0.7, -0.3, 0.2), 2.0, 10_000
        cfg = PathConfig(3, 1.0, t, drift, seed=5)
        ends = np.array([sample_path(cfg, i, n_steps=1)[-1] for i in range(n)])
        for k in range(3):
            assert abs(ends[:, k].mean() - drift[k] * t) <= 4 * math.sqrt(t / n)

    def test_starts_at_origin(self):
        path = sample_path(PathConfig(3, 1.0, 1.0, (1, 0, 0), dt=0.1), 3)
        assert path.shape == (11, 3) and not path[0].any()

    def test_deterministic(self):
        cfg = PathConfig(3, 1.0, 1.0, (0.2, 0.0, 0.0), dt=0.01, seed=123)
        a, b = sample_path(cfg, 7), sample_path(cfg, 7)
        assert a.tobytes() == b.tobytes()
        assert sample_path(cfg, 8).tobytes() != a.tobytes()


class TestCapsuleUnion:
    def test_single_point_ball(self):
        assert abs(hit_or_miss_z(np.zeros(3), 1.0, 200_000, 4 * math.pi / 3, 1)) <= 3

    def test_straight_segment(self):
        P = np.array([[0.0, 0, 0], [2.0, 0, 0]])
        exact = 2 * math.pi + 4 * math.pi / 3
        assert abs(hit_or_miss_z(P, 1.0, 200_000, exact, 2)) <= 3

    def test_planar_segment(self):
        P = np.array([[0.0, 0], [3.0, 4.0]])
        assert abs(hit_or_miss_z(P, 0.5, 200_000, 2 * 0.5 * 5 + math.pi * 0.25, 3)) <= 3

    def test_collinear_split_is_same_set(self):
        rng = np.random.default_rng(0)
        X = rng.uniform(-2, 4, size=(50_000, 3))
        one = np.array([[0.0, 0, 0], [2.0, 0, 0]])
        two = np.array([[0.0, 0, 0], [1.0, 0, 0], [2.0, 0, 0]])
        assert np.array_equal(capsule_union_hits(one, X, 1.0), capsule_union_hits(two, X, 1.0))
        a = sausage_volume_one_path(one, 1.0, 100_000, np.random.default_rng(1))
        b = sausage_volume_one_path(two, 1.0, 100_000, np.random.default_rng(2))
        box = 4 * 2 * 2
        se = box * math.sqrt(2 * 0.66 * 0.34 / 100_000)
        assert abs(a - b) <= 3 * se

    @pytest.mark.parametrize("d", [2, 3])
    def test_matches_brute_force(self, d):
        cfg = PathConfig(d, 0.3, 1.0, (0.5,) + (0.0,) * (d - 1), dt=1e-3, seed=9)
        P = sample_path(cfg, 0)
        rng = np.random.default_rng(4)
        X = P.min(axis=0) - 0.3 + (np.ptp(P, axis=0) + 0.6) * rng.random((20_000, d))
        assert np.array_equal(capsule_union_hits(P, X, 0.3), brute_hits(P, X, 0.3))


class TestEstimate:
    def test_summary_fields(self):
        est = McEstimate.from_samples([1.0, 2.0, 3.0, 4.0], seed=3)
        assert est.mean == 2.5 and est.n_paths == 4 and est.seed == 3
        assert est.stderr == pytest.approx(math.sqrt(5 / 3 / 4))
        assert est.ci95 == pytest.approx((2.5 - 1.96 * est.stderr, 2.5 + 1.96 * est.stderr))
        assert "underestimate" in est.bias_note

    def test_thread_count_invariance(self):
        cfg = PathConfig(2, 1.0, 0.5, (0.5, 0.0), dt=5e-3, n_paths=24, n_points=500, seed=42)
        results = [estimate_expected_volume(cfg, workers=w) for w in (1, 4, 8)]
        assert all(r.samples == results[0].samples and r.mean == results[0].mean for r in results)

    def test_direction_invariance(self):
        kw = dict(dt=1e-3, n_paths=300, n_points=1000)
        a = estimate_expected_volume(PathConfig(3, 1.0, 1.0, (1.0, 0, 0), seed=1, **kw))
        b = estimate_expected_volume(PathConfig(3, 1.0, 1.0, (0, 0, 1.0), seed=2, **kw))
        assert abs(a.mean - b.mean) <= 3 * math.hypot(a.stderr, b.stderr)

    def test_halving_dt_does_not_shrink(self):
        kw = dict(n_paths=300, n_points=1000)
        coarse = estimate_expected_volume(PathConfig(3, 1.0, 1.0, (0, 0, 0), dt=0.02, seed=1, **kw))
        fine = estimate_expected_volume(PathConfig(3, 1.0, 1.0, (0, 0, 0), dt=0.01, seed=2, **kw))
        assert fine.mean >= coarse.mean - 3 * math.hypot(coarse.stderr, fine.stderr)

    def test_zero_time(self):
        est = estimate_expected_volume(PathConfig(3, 1.0, 0.0, (0, 0, 0), n_paths=50, n_points=2000, seed=0))
        assert abs(est.z_score(4 * math.pi / 3)) <= 3.5

    def test_env_threads(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert default_workers() == 3
        monkeypatch.setenv(THREADS_ENV, "many")
        with pytest.raises(DomainError):
            default_workers()


class TestSlope:
    def test_slope_near_aleph(self):
        cfg = PathConfig(2, 1.0, 30.0, (1.0, 0.0), dt=0.01, n_paths=100, n_points=2000, seed=3)
        ests = slope_check(cfg, [5.0, 10.0, 30.0])
        target = aleph(ModelParams(2, 1.0, 1.0)).value
        last = ests[-1]
        assert abs(last.mean - target) <= 0.05 * target + 1.96 * last.stderr
        gaps = [abs(e.mean - target) for e in ests]
        if not gaps[0] > gaps[1] > gaps[2]:
            print(f"flag: slope gaps not monotone: {gaps}")

    def test_rejects_bad_times(self):
        cfg = PathConfig(2, 1.0, 1.0, (1.0, 0.0))
        with pytest.raises(DomainError):
            slope_check(cfg, [2.0, 1.0])
