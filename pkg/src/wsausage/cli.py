"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import math
import sys
import time
from contextlib import contextmanager
from typing import Callable, Iterable, Sequence

import click
import numpy as np

from .asymptotics import aleph, aleph_limit, aleph_phi_form
from .driftless import driftless_volume, tilde_sigma
from .errors import DomainError, NumericalError
from .laplace import f_mu, invert
from .params import ModelParams
from .sausage import VolumeResult, expected_volume, invert_transform
from .simulate import PathConfig, default_workers, estimate_expected_volume
from .specfun.gamma import ball_volume, sphere_surface

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
TABLE_FIELDS = ("d", "r", "v", "t", "volume", "L", "trunc_bound", "quad_bound", "route")


# ------------------------------------------------------------------ output


def _fmt(value, digits: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return f"{value:.{digits}g}"
    return str(value)


def _json_value(value) -> str:
    if isinstance(value, str):
        import json

        return json.dumps(value)
    return _fmt(value, 17)


def _json_object(record: dict) -> str:
    return "{" + ", ".join(f'"{k}": {_json_value(v)}' for k, v in record.items()) + "}"


def render(records: Sequence[dict], fmt: str, as_array: bool) -> str:
    if fmt == "json":
        if as_array:
            return "[" + ",\n ".join(_json_object(r) for r in records) + "]\n"
        return _json_object(records[0]) + "\n"
    header = list(records[0].keys())
    lines = [",".join(header)]
    lines += [",".join(_fmt(r[k], 10) for k in header) for r in records]
    return "\n".join(lines) + "\n"


def emit(records: Sequence[dict], fmt: str, out: str | None, as_array: bool = False) -> None:
    text = render(records, fmt, as_array)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@contextmanager
def _stage(name: str):
    try:
        yield
    except DomainError as exc:
        raise click.UsageError(f"{name}: {exc}") from exc
    except (NumericalError, OverflowError, ZeroDivisionError) as exc:
        click.echo(f"error: numeric failure in {name}: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)


def volume_record(res: VolumeResult) -> dict:
    p = res.params
    return {
        "d": p.d,
        "r": p.r,
        "v": p.v_mag,
        "t": res.t,
        "volume": res.value,
        "L": res.L,
        "trunc_bound": res.trunc_bound,
        "quad_bound": res.quad_bound,
        "route": res.route,
    }


def _drifted_params(dim: int, radius: float, drift: float) -> ModelParams:
    if drift == 0:
        raise click.UsageError("--drift 0 is the driftless case; use the 'driftless' subcommand")
    with _stage("parameters"):
        return ModelParams(dim, radius, drift)


def _compute(params: ModelParams, t: float, tol: float, route: str) -> VolumeResult:
    with _stage(f"{route} route"):
        if route == "inversion":
            return invert_transform(params, t, tol)
        return expected_volume(params, t, tol)


# ------------------------------------------------------------------ commands

dim_opt = click.option("--dim", "-d", type=click.IntRange(min=2), required=True, help="Dimension d >= 2.")
radius_opt = click.option("--radius", "-r", type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True)
tol_opt = click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-6, show_default=True)
format_opt = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
out_opt = click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write to a file.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Expected volume of the drifted Wiener sausage around a ball."""


@main.command()
@dim_opt
@radius_opt
@click.option("--drift", "-v", type=click.FloatRange(min=0), required=True, help="Drift magnitude |v|.")
@click.option("--time", "-t", "t", type=click.FloatRange(min=0), required=True)
@tol_opt
@click.option("--route", type=click.Choice(["series", "inversion"]), default="series", show_default=True)
@format_opt
@out_opt
def volume(dim, radius, drift, t, tol, route, fmt, out):
    """E[vol] at one time."""
    params = _drifted_params(dim, radius, drift)
    if route == "inversion" and t == 0:
        route = "series"
    emit([volume_record(_compute(params, t, tol, route))], fmt, out)


@main.command()
@dim_opt
@radius_opt
@click.option("--drift", "-v", type=click.FloatRange(min=0), required=True)
@click.option("--tmin", type=click.FloatRange(min=0), required=True)
@click.option("--tmax", type=float, required=True)
@click.option("--steps", type=int, default=11, show_default=True)
@tol_opt
@click.option("--route", type=click.Choice(["series", "inversion"]), default="series", show_default=True)
@format_opt
@out_opt
def table(dim, radius, drift, tmin, tmax, steps, tol, route, fmt, out):
    """E[vol] on a uniform time grid."""
    if not tmin < tmax:
        raise click.BadParameter("need tmin < tmax", param_hint="--tmax")
    if steps < 2:
        raise click.BadParameter("need steps >= 2", param_hint="--steps")
    params = _drifted_params(dim, radius, drift)
    grid = np.linspace(tmin, tmax, steps)
    rows = []
    for t in grid:
        rt = "series" if t == 0 else route
        rows.append(volume_record(_compute(params, float(t), tol, rt)))
    emit(rows, fmt, out, as_array=True)


@main.command()
@dim_opt
@radius_opt
@click.option("--drift", "-v", type=click.FloatRange(min=0), required=True)
@click.option("--limit", is_flag=True, help="Also report the |v| -> 0 limit and the gap to it.")
@format_opt
@out_opt
def asymptote(dim, radius, drift, limit, fmt, out):
    """Long-time growth rate of E[vol]."""
    params = _drifted_params(dim, radius, drift)
    with _stage("aleph"):
        a = aleph(params)
    rec = {"d": dim, "r": radius, "v": drift, "aleph": a.value, "terms_used": a.terms_used, "trunc_bound": a.trunc_bound}
    if limit:
        lim = aleph_limit(dim, radius)
        rec["limit"] = lim
        rec["gap"] = a.value - lim
    emit([rec], fmt, out)


@main.command()
@click.option("--dim", "-m", "m", type=click.IntRange(min=1), required=True, help="Dimension m >= 1.")
@radius_opt
@click.option("--time", "-t", "t", type=click.FloatRange(min=0), required=True)
@format_opt
@out_opt
def driftless(m, radius, t, fmt, out):
    """E[vol] without drift: the ball volume plus the driftless profile."""
    with _stage("driftless profile"):
        L = driftless_volume(m, radius, t)
    emit([{"m": m, "r": radius, "t": t, "volume": ball_volume(m, radius) + L, "L": L}], fmt, out)


def _parse_drift(text: str, dim: int) -> tuple[float, ...]:
    try:
        parts = [float(s) for s in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"not a number list: {text!r}", param_hint="--drift") from None
    if len(parts) == 1:
        parts += [0.0] * (dim - 1)
    if len(parts) != dim:
        raise click.BadParameter(f"expected 1 or {dim} components", param_hint="--drift")
    return tuple(parts)


def formula_volume(d: int, r: float, v_mag: float, t: float) -> float:
    """Reference E[vol] for the simulator: the series route, or the driftless profile when v = 0."""
    if v_mag == 0:
        return ball_volume(d, r) + driftless_volume(d, r, t)
    return expected_volume(ModelParams(d, r, v_mag), t).value


def simulate_record(cfg: PathConfig, workers: int | None) -> dict:
    est = estimate_expected_volume(cfg, workers)
    ref = formula_volume(cfg.d, cfg.r, cfg.v_mag, cfg.t)
    return {
        "d": cfg.d,
        "r": cfg.r,
        "drift": " ".join(_fmt(c, 17) for c in cfg.drift),
        "t": cfg.t,
        "dt": cfg.dt,
        "n_paths": cfg.n_paths,
        "n_points": cfg.n_points,
        "seed": cfg.seed,
        "mean": est.mean,
        "stderr": est.stderr,
        "ci_low": est.ci95[0],
        "ci_high": est.ci95[1],
        "formula": ref,
        "z": est.z_score(ref),
    }


@main.command()
@click.option("--dim", "-d", type=click.Choice(["2", "3"]), required=True)
@radius_opt
@click.option("--drift", "-v", default="0", show_default=True, help="Magnitude along the first axis, or a comma-separated vector.")
@click.option("--time", "-t", "t", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--paths", type=click.IntRange(min=2), default=2000, show_default=True)
@click.option("--dt", type=click.FloatRange(min=0, min_open=True), default=None, help="Time step [default: t * 1e-4].")
@click.option("--points", type=click.IntRange(min=1), default=4000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads [default: $WSAUSAGE_THREADS or CPU count].")
@format_opt
@out_opt
def simulate(dim, radius, drift, t, paths, dt, points, seed, threads, fmt, out):
    """Monte Carlo estimate of E[vol] compared with the formula."""
    d = int(dim)
    with _stage("simulation setup"):
        cfg = PathConfig(d, radius, t, _parse_drift(drift, d), dt, paths, points, seed)
    with _stage("simulation"):
        rec = simulate_record(cfg, threads if threads is not None else default_workers())
    emit([rec], fmt, out)


# ------------------------------------------------------------------ verify


def _checks(quick: bool) -> Iterable[tuple[str, Callable[[], tuple[bool, str]]]]:
    dims = (2, 3) if quick else (2, 3, 4, 5)
    times = (0.5, 2.0) if quick else (0.5, 2.0, 10.0)
    for d in dims:
        for v in (0.25, 1.0):
            for t in times:
                def route(d=d, v=v, t=t):
                    p = ModelParams(d, 1.0, v)
                    a, b = expected_volume(p, t).value, invert_transform(p, t).value
                    gap = abs(a - b) / a
                    return gap <= 1e-4, f"gap={gap:.2e}"

                yield f"routes d={d} v={v} t={t}", route

    for m in (2, 3, 4, 5):
        for v in (0.25, 1.0):
            for t in ((1.0,) if quick else (0.5, 1.0, 5.0)):
                def identity(m=m, v=v, t=t):
                    p = ModelParams(2, 1.0, v)
                    lhs = invert(lambda lam: f_mu(p, m / 2 - 1, lam), t)
                    rhs = 2.0 * tilde_sigma(p, m, t) / sphere_surface(m - 1)
                    gap = abs(lhs - rhs) / rhs
                    return gap <= 1e-5, f"gap={gap:.2e}"

                yield f"profile identity m={m} v={v} t={t}", identity

    for d in (2, 3, 4):
        for x in (0.5, 1.0, 2.0):
            def dual(d=d, x=x):
                p = ModelParams(d, 1.0, x)
                a, b = aleph(p).value, aleph_phi_form(p).value
                gap = abs(a - b) / abs(a)
                return gap <= 1e-10, f"gap={gap:.2e}"

            yield f"aleph forms d={d} r|v|={x}", dual

    paths = 200 if quick else 2000
    points = 2000 if quick else 4000
    for d in (2, 3):
        for v in (0.0, 0.5):
            for t in ((1.0,) if quick else (1.0, 2.0)):
                def mc(d=d, v=v, t=t):
                    cfg = PathConfig(d, 1.0, t, (v,) + (0.0,) * (d - 1), n_paths=paths, n_points=points, seed=7)
                    rec = simulate_record(cfg, default_workers())
                    return abs(rec["z"]) <= 3.0, f"z={rec['z']:+.2f}"

                yield f"monte carlo d={d} v={v} t={t}", mc


@main.command()
@click.option("--quick", is_flag=True, help="Small grid and fewer Monte Carlo paths.")
def verify(quick):
    """Cross-check battery; exits 1 if any check fails."""
    failed = 0
    for name, check in _checks(quick):
        start = time.perf_counter()
        with _stage(name):
            ok, detail = check()
        failed += not ok
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}  ({time.perf_counter() - start:.2f}s)")
    click.echo(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    sys.exit(EXIT_VERIFY if failed else EXIT_OK)


if __name__ == "__main__":
    main()
