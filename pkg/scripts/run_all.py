#!/usr/bin/env python3
"""Run every suite on every model and print a verdict matrix."""
import argparse
import time

from catdiff import suites
from catdiff.cli import resolve_model
from catdiff.fixtures import load
from catdiff.model import Budget

MODELS = ["finrel", "cokleisli-finrel", "polydiff", "split-cokleisli-finrel",
          "slice:A@cokleisli-finrel", "slice:A@polydiff"]


def cell(report):
    t = report.totals
    run = t["equations"] - t["Unsupported"]
    if run == 0:
        return "-"
    return f"{t['passed'] - t['Unsupported']}/{run}" + ("" if report.ok else "!")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fixtures")
    args = ap.parse_args()
    fx = load(args.fixtures)
    budget = Budget.uniform(args.cap) if args.cap is not None else None
    names = [n for n, _, _ in suites.list_suites()]
    w = max(map(len, names))
    print(" " * w, *(f"{m[:14]:>14}" for m in MODELS))
    t0 = time.perf_counter()
    bad = 0
    for n in names:
        row = []
        for m in MODELS:
            r = suites.run(resolve_model(m, fx), n, budget, seed=args.seed, jobs=1)
            bad += not r.ok
            row.append(cell(r))
        print(f"{n:<{w}}", *(f"{c:>14}" for c in row))
    print(f"\n'-' = all unsupported, '!' = failure; {bad} failing reports, "
          f"{time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
