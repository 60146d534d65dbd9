"""Monte Carlo estimate vs formula on the acceptance grid, optionally at a refined time step.

Example: python scripts/mc_agreement.py --dt-scale 0.25 --dims 3 --drifts 0 --times 2
"""

import argparse
import itertools
import time

from wsausage.cli import formula_volume
from wsausage.simulate import PathConfig, estimate_expected_volume


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--drifts", type=float, nargs="+", default=[0.0, 0.5])
    ap.add_argument("--times", type=float, nargs="+", default=[1.0, 2.0])
    ap.add_argument("--paths", type=int, default=2000)
    ap.add_argument("--points", type=int, default=4000)
    ap.add_argument("--dt-scale", type=float, default=1.0, help="dt = scale * t * 1e-4")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    print("d,v,t,dt,mean,stderr,formula,z,seconds")
    for d, v, t in itertools.product(args.dims, args.drifts, args.times):
        dt = args.dt_scale * t * 1e-4
        cfg = PathConfig(d, 1.0, t, (v,) + (0.0,) * (d - 1), dt, args.paths, args.points, args.seed)
        start = time.perf_counter()
        est = estimate_expected_volume(cfg, args.threads)
        ref = formula_volume(d, 1.0, v, t)
        print(
            f"{d},{v},{t},{dt:.3g},{est.mean:.6f},{est.stderr:.6f},{ref:.6f},"
            f"{est.z_score(ref):+.2f},{time.perf_counter() - start:.1f}",
            flush=True,
        )


if __name__ == "__main__":
    main()
