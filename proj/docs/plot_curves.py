#!/usr/bin/env python3
"""Plot certificate sweep CSVs produced by `nerf curve`.

Each input file becomes one line in both panels: log2(beta/alpha) on the
left, -log2(alpha) on the right, both against the erasure proportion s.
Flagged rows (vacuous, or K not above n) have empty numeric fields and are
skipped.

Usage:
    nerf curve --mode fixed_K --ratio 2 > k2.csv
    nerf curve --mode fixed_K --ratio 5 > k5.csv
    python3 docs/plot_curves.py -o curves.png k2.csv k5.csv
"""

import argparse
import csv
import sys


def read_curve(path):
    s, log2_ratio, neg_log2_alpha = [], [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row["flag"]:
                continue
            s.append(float(row["s"]))
            log2_ratio.append(float(row["log2_ratio"]))
            neg_log2_alpha.append(float(row["neg_log2_alpha"]))
    return s, log2_ratio, neg_log2_alpha


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csvs", nargs="+", help="CSV files from `nerf curve`")
    ap.add_argument("-o", "--out", default="curves.png", help="output image path")
    args = ap.parse_args()

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax_ratio, ax_alpha) = plt.subplots(1, 2, figsize=(11, 4.5))
    for path in args.csvs:
        s, log2_ratio, neg_log2_alpha = read_curve(path)
        if not s:
            print(f"{path}: no unflagged rows, skipping", file=sys.stderr)
            continue
        ax_ratio.plot(s, log2_ratio, label=path)
        ax_alpha.plot(s, neg_log2_alpha, label=path)
    ax_ratio.set_xlabel("erasure proportion s")
    ax_ratio.set_ylabel("log2(beta/alpha)")
    ax_alpha.set_xlabel("erasure proportion s")
    ax_alpha.set_ylabel("-log2(alpha)")
    ax_ratio.legend()
    ax_alpha.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(args.out)


if __name__ == "__main__":
    main()
