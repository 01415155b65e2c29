"""Plot CSV output of the sepvol CLI.

    sepvol conditional-r --dims 2x2 --seed 1 > cond.csv
    sepvol dist-r --dims 2x2 --seed 1 --bins 60 > dist.csv
    python scripts/plot_conditional.py cond.csv dist.csv -o figure.png
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("conditional", help="CSV from conditional-r")
    ap.add_argument("distribution", nargs="?", help="CSV from dist-r")
    ap.add_argument("-o", "--output", default="conditional.png")
    args = ap.parse_args()

    cond = pd.read_csv(args.conditional)
    mid = 0.5 * (cond["r_lo"] + cond["r_hi"])
    nrows = 2 if args.distribution else 1
    fig, axes = plt.subplots(nrows, 1, figsize=(6, 3.2 * nrows), sharex=True, squeeze=False)

    ax = axes[0][0]
    ax.plot(mid, cond["ppt_fraction"], "+", label="PPT fraction")
    ax.plot(mid, cond["mean_t"], ".", label="mean t")
    ax.set_ylabel("probability / <t>")
    ax.legend()

    if args.distribution:
        dist = pd.read_csv(args.distribution)
        dmid = 0.5 * (dist["r_lo"] + dist["r_hi"])
        ax = axes[1][0]
        ax.step(dmid, dist["density"], where="mid", label="histogram")
        if "analytic_density" in dist and dist["analytic_density"].notna().any():
            ax.plot(dmid, dist["analytic_density"], "k--", label="closed form (R > 3)")
        ax.set_ylabel("P(R)")
        ax.legend()

    axes[-1][0].set_xlabel("participation ratio R")
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
