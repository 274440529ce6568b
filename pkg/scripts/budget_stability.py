#!/usr/bin/env python3
"""Re-run suites at increasing caps and report verdicts that change."""
import argparse

from catdiff import suites
from catdiff.cli import resolve_model
from catdiff.fixtures import Fixtures
from catdiff.model import Budget


def verdicts(model, cap):
    out = {}
    for n, _, _ in suites.list_suites():
        for e in suites.run(model, n, Budget.uniform(cap), jobs=1).equations:
            out[(n, e.id)] = e.verdict
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", default="cokleisli-finrel")
    ap.add_argument("--caps", type=int, nargs="+", default=[3, 4, 5, 6])
    args = ap.parse_args()
    model = resolve_model(args.model, Fixtures())
    prev = None
    for cap in args.caps:
        cur = verdicts(model, cap)
        changed = [] if prev is None else [k for k in cur if cur[k] != prev[k]]
        print(f"cap {cap}: {sum(v == 'Equal' for v in cur.values())} Equal, "
              f"{len(changed)} changed since previous cap")
        for k in changed:
            print(f"    {k[0]} {k[1]}: {prev[k]} -> {cur[k]}")
        prev = cur


if __name__ == "__main__":
    main()
