#!/usr/bin/env python3
"""Grid-tune alpha (and c for SPSA) on the 50-point subset, averaging the
best validation loss over several tuning seeds.

    tools/tune.py --vqtrain build/vqtrain --out tune_out [--datasets mreg f2] ...

Prints one line per (dataset, method, optimizer) with the winning cell.
"""
import argparse
import csv
import itertools
import json
import pathlib
import subprocess
from collections import defaultdict

ALPHAS = [0.01, 0.03, 0.1, 0.3, 1.0, 3.0]
CS = [0.05, 0.1, 0.2]
OPTIMIZERS = ["sgd", "sgd_momentum", "adam", "amsgrad", "rmsprop"]


def tune(args, ds, method, opt, out):
    grid = {"optimizer.alpha": ALPHAS}
    if method == "spsa":
        grid["gradient.c"] = CS
    scores = defaultdict(list)
    for seed in args.seeds:
        cell_dir = out / f"{ds}_{method}_{opt}_s{seed}"
        cfg = {
            "base": {"dataset": {"name": ds}, "gradient": {"method": method},
                     "optimizer": {"kind": opt}, "epochs": args.epochs, "seed": seed},
            "grid": grid,
        }
        path = out / f"{ds}_{method}_{opt}_s{seed}.json"
        path.write_text(json.dumps(cfg))
        subprocess.run([args.vqtrain, "sweep", "--config", str(path), "--out", str(cell_dir),
                        "--jobs", str(args.jobs)], check=True, stdout=subprocess.DEVNULL)
        with open(cell_dir / "leaderboard.csv") as f:
            for row in csv.DictReader(f):
                loss = float(row["best_val"]) if row["status"] == "ok" else float("inf")
                scores[row["label"]].append(loss)
    ranked = sorted(scores.items(), key=lambda kv: (sum(kv[1]) / len(kv[1]), kv[0]))
    label, losses = ranked[0]
    return json.loads(label), sum(losses) / len(losses)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--vqtrain", default="build/vqtrain")
    p.add_argument("--out", default="tune_out")
    p.add_argument("--datasets", nargs="+", default=["mreg", "f1", "f2", "f3"])
    p.add_argument("--methods", nargs="+", default=["spsa", "param_shift"])
    p.add_argument("--optimizers", nargs="+", default=OPTIMIZERS)
    p.add_argument("--seeds", nargs="+", type=int, default=[101, 102, 103])
    p.add_argument("--epochs", type=int, default=30)
    p.add_argument("--jobs", type=int, default=0)
    args = p.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for ds, method, opt in itertools.product(args.datasets, args.methods, args.optimizers):
        best, loss = tune(args, ds, method, opt, out)
        print(ds, method, opt, json.dumps(best), f"{loss:.4f}", flush=True)


if __name__ == "__main__":
    main()
