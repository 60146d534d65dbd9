"""L(t)/t and the finite-difference slope against the long-time growth rate."""

import argparse
import itertools

from wsausage import ModelParams, aleph, expected_volume


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--drifts", type=float, nargs="+", default=[0.5, 1.0])
    ap.add_argument("--times", type=float, nargs="+", default=[25.0, 50.0, 100.0, 200.0])
    args = ap.parse_args()

    print("d,v,t,aleph,L_over_t,gap_L_over_t,slope,gap_slope")
    for d, v in itertools.product(args.dims, args.drifts):
        p = ModelParams(d, 1.0, v)
        a = aleph(p).value
        prev = None
        for t in args.times:
            L = expected_volume(p, t).L
            slope = "" if prev is None else (L - prev[1]) / (t - prev[0])
            gap_slope = "" if prev is None else f"{abs(slope - a) / a:.3e}"
            slope_s = "" if prev is None else f"{slope:.8g}"
            print(f"{d},{v},{t},{a:.8g},{L / t:.8g},{abs(L / t - a) / a:.3e},{slope_s},{gap_slope}")
            prev = (t, L)


if __name__ == "__main__":
    main()
