#!/usr/bin/env python3
"""Plot reward, satisfaction, budgets and loss of one or more run directories."""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def load(run_dir: Path):
    metrics = pd.read_csv(run_dir / "metrics.csv")
    training = pd.read_csv(run_dir / "training.csv")
    return metrics, training


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("runs", nargs="+", type=Path, help="run output directories")
    parser.add_argument("--window", type=int, default=200, help="rolling window in ticks")
    parser.add_argument("--out", type=Path, default=Path("metrics.png"))
    args = parser.parse_args()

    fig, axes = plt.subplots(2, 2, figsize=(12, 8))
    for run_dir in args.runs:
        metrics, training = load(run_dir)
        label = run_dir.name
        per_tick = metrics.groupby("t")["r_main"].mean()
        axes[0, 0].plot(per_tick.rolling(args.window, min_periods=1).mean(), label=label)
        phi = metrics.groupby("t")["phi"].mean()
        axes[0, 1].plot(phi.rolling(args.window, min_periods=1).mean(), label=label)
        budgets = metrics.pivot_table(index="t", columns="slice", values="budget", aggfunc="first")
        for slice_id in budgets.columns:
            axes[1, 0].plot(budgets[slice_id], label=f"{label} slice {slice_id}", linewidth=0.8)
        axes[1, 1].plot(training["step"], training["loss"].rolling(args.window, min_periods=1).mean(), label=label)

    axes[0, 0].set_title("main reward (rolling mean)")
    axes[0, 1].set_title("slice satisfaction (rolling mean)")
    axes[1, 0].set_title("RB budget per slice")
    axes[1, 1].set_title("learner loss (rolling mean)")
    axes[1, 1].set_yscale("log")
    for ax in axes.flat:
        ax.set_xlabel("tick")
        ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
