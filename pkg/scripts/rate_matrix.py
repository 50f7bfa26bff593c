"""Run the full regime matrix and print one row per configuration.

Eight (n, theta) pairs cover the three long-time regimes of the solution
norm: four power decays, two power growths, and the two borderline cases
where the norm grows like sqrt(log t).  For power regimes the row shows
the fitted exponent against the predicted one; for log regimes it shows
the log-law slope and how decisively the log fit beats the power fit.

Usage:
    python3 scripts/rate_matrix.py [--t0 1e4] [--t1 1e8] [--count 25]
                                   [--csv PATH]
"""

import argparse
import sys

from logwave import (
    ModelParams,
    QuadratureConfig,
    check_norm_rates,
    gaussian_data,
    geometric_times,
)

MATRIX = [
    (3, 1.0),
    (4, 1.0),
    (2, 0.5),
    (1, 0.25),
    (1, 0.75),
    (1, 1.0),
    (1, 0.5),
    (2, 1.0),
]


def run(t0: float, t1: float, count: int):
    times = geometric_times(t0, t1, count)
    cfg = QuadratureConfig(mode="averaged")
    rows = []
    for n, theta in MATRIX:
        params = ModelParams(n=n, theta=theta, m=1.0)
        report = check_norm_rates(params, gaussian_data(n, theta), times, cfg)
        if report.prediction.kind == "log-growth":
            expected = ""
            fitted = report.log_fit.slope
            note = (
                f"power_rms/log_rms="
                f"{report.power_fit.residual_rms / report.log_fit.residual_rms:.1f}"
            )
        else:
            expected = f"{report.expected:+.4f}"
            fitted = report.fitted_slope
            note = f"slope_error={report.slope_error:.2e}"
        rows.append(
            {
                "n": n,
                "theta": theta,
                "regime": report.prediction.kind,
                "expected": expected,
                "fitted": f"{fitted:+.6f}",
                "note": note,
                "passed": report.passed,
            }
        )
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t0", type=float, default=1e4)
    ap.add_argument("--t1", type=float, default=1e8)
    ap.add_argument("--count", type=int, default=25)
    ap.add_argument("--csv", help="also write the table to this path")
    args = ap.parse_args(argv)

    rows = run(args.t0, args.t1, args.count)
    header = f"{'n':>2} {'theta':>6} {'regime':<12} {'expected':>9} {'fitted':>10} {'':<24} pass"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['n']:>2} {row['theta']:>6.2f} {row['regime']:<12} "
            f"{row['expected']:>9} {row['fitted']:>10} {row['note']:<24} "
            f"{'yes' if row['passed'] else 'NO'}"
        )

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("n,theta,regime,expected,fitted,note,passed\n")
            for row in rows:
                fh.write(
                    f"{row['n']},{row['theta']},{row['regime']},{row['expected']},"
                    f"{row['fitted']},{row['note']},{int(row['passed'])}\n"
                )
        print(f"wrote {args.csv}")

    return 0 if all(row["passed"] for row in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
