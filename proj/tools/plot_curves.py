#!/usr/bin/env python3
"""Plot return-probability curves from a walklap CSV (compare, return-prob, or
the acceptance run's mu_interpolation.csv)."""
import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path) as f:
        rows = [r for r in csv.reader(f) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    cols = {h: [float(r[i]) for r in body] for i, h in enumerate(header)}
    return header, cols


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default="curves.png")
    ap.add_argument("--logy", action="store_true")
    args = ap.parse_args()

    header, cols = read(args.csv)
    t = cols[header[0]]
    fig, ax = plt.subplots(figsize=(6, 4))
    for name in header[1:]:
        if name == "err_est":
            continue
        ax.plot(t, cols[name], label=name)
        if name == "p_hat" and "err_est" in cols:
            lo = [v - 3 * e for v, e in zip(cols[name], cols["err_est"])]
            hi = [v + 3 * e for v, e in zip(cols[name], cols["err_est"])]
            ax.fill_between(t, lo, hi, alpha=0.25)
    ax.set_xlabel("t")
    ax.set_ylabel("average return probability")
    if args.logy:
        ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
