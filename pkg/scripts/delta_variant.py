#!/usr/bin/env python3
"""Compare the standard delta with the variant that forbids empty parts.

Prints every equation whose verdict differs, with the variant's witness.
"""
import argparse
import json

from catdiff import suites
from catdiff.constructions import CoKleisli
from catdiff.finrel import FinRel
from catdiff.model import Budget


def models(variant):
    base = FinRel(delta_variant=variant)
    return {"finrel": base, "cokleisli-finrel": CoKleisli(base)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=None)
    args = ap.parse_args()
    budget = Budget.uniform(args.cap) if args.cap else None
    std, var = models("standard"), models("no-empty-parts")
    differ = 0
    for mname in std:
        for n, _, _ in suites.list_suites():
            a = suites.run(std[mname], n, budget, jobs=1)
            b = suites.run(var[mname], n, budget, jobs=1)
            for ea, eb in zip(a.equations, b.equations):
                if ea.verdict != eb.verdict:
                    differ += 1
                    print(f"{mname:17} {n:22} {ea.id:22} {ea.verdict} -> {eb.verdict}")
                    if eb.witness is not None:
                        print(" " * 19 + "witness " + json.dumps(eb.witness, sort_keys=True))
    print(f"{differ} equations distinguish the variants")


if __name__ == "__main__":
    main()
