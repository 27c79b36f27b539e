#!/usr/bin/env python3
"""Render the experiment CSVs as PNG figures.

Optional convenience only; the library and CLI never depend on matplotlib.

Usage: plot_figures.py [results_dir]
"""

import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from isacpulse.serialize import read_csv


def plot_sacf(path, out):
    meta, data = read_csv(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(data["lag"], data["theory_rrc_db"], "b-", label="RRC, theory")
    ax.plot(data["lag"], data["mc_rrc_db"], "b.", ms=3, label="RRC, Monte-Carlo")
    ax.plot(data["lag"], data["theory_opt_db"], "r-", label="optimized, theory")
    ax.plot(data["lag"], data["mc_opt_db"], "r.", ms=3, label="optimized, Monte-Carlo")
    ax.set_xlabel("delay (samples)")
    ax.set_ylabel("normalized average SACF (dB)")
    ax.set_title(f"beta = {meta.get('beta', '?')}")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print(out)


def plot_vs_bitrate(path, cols, ylabel, out):
    _, data = read_csv(path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    rate = data["bit_rate_bps"] / 1e6
    for col, style, label in cols:
        ax.plot(rate, data[col], style, label=label)
    ax.set_xlabel("bit rate (Mbps)")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print(out)


def main():
    d = sys.argv[1] if len(sys.argv) > 1 else "results"
    jobs = [
        ("sacf_curves.csv", lambda p, o: plot_sacf(p, o), "fig1_sacf.png"),
        (
            "sidelobe_vs_bitrate.csv",
            lambda p, o: plot_vs_bitrate(
                p,
                [("rrc_second_sidelobe_db", "bo-", "RRC"),
                 ("opt_second_sidelobe_db", "rs-", "optimized")],
                "second sidelobe level (dB)",
                o,
            ),
            "fig2_sidelobe.png",
        ),
        (
            "islr_vs_bitrate.csv",
            lambda p, o: plot_vs_bitrate(
                p,
                [("rrc_islr_db", "bo-", "RRC"), ("opt_islr_db", "rs-", "optimized")],
                "expected ISLR (dB)",
                o,
            ),
            "fig3_islr.png",
        ),
    ]
    for name, fn, out in jobs:
        path = os.path.join(d, name)
        if os.path.exists(path):
            fn(path, os.path.join(d, out))
        else:
            print(f"skip {name} (not found in {d})")


if __name__ == "__main__":
    main()
