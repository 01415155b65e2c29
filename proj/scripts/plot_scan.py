"""Plot `sepvol scan --fit` output on a log scale with the fitted line.

    sepvol scan --seed 1 --fit > scan.csv
    python scripts/plot_scan.py scan.csv -o scan.png
"""

import argparse

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("scan")
    ap.add_argument("-o", "--output", default="scan.png")
    args = ap.parse_args()

    df = pd.read_csv(args.scan)
    est = df[df["record"] == "estimate"]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.errorbar(est["N"], est["p_hat"], yerr=est["stderr"], fmt="o", label="PPT fraction")
    fit = df[df["record"] == "fit"]
    if not fit.empty:
        a, g = float(fit["prefactor"].iloc[0]), float(fit["rate"].iloc[0])
        n = np.linspace(est["N"].min(), est["N"].max(), 100)
        ax.plot(n, a * np.exp(-g * n), "k--", label=f"{a:.2f} exp(-{g:.3f} N)")
    ax.set_yscale("log")
    ax.set_xlabel("N = N1 N2")
    ax.set_ylabel("P_N")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
