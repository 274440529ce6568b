"""catdiff command line.

    catdiff run --model cokleisli-finrel --suite abstract-cokleisli --cap 3
    catdiff --list --verbose

Exit status: 0 when every executed equation passed (Unsupported is a skip),
1 on any failure, 2 on a configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import suites
from .constructions import CoKleisli, default_split_cokleisli, slice_model
from .expr import Base, ParseError, parse_obj
from .finrel import FinRel
from .finrel.model import DELTA_VARIANTS
from .fixtures import FixtureError, Fixtures, load
from .model import Budget, UnknownSuite
from .polydiff import PolyDiff

MODEL_NAMES = ("finrel", "cokleisli-finrel", "polydiff", "split-cokleisli-finrel",
               "slice:<obj>@<model>")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    model: str = "finrel"
    suites: list = field(default_factory=list)
    cap: Optional[int] = None
    intermediate_cap: object = "inferred"
    seed: int = 0
    delta_variant: str = "standard"
    output: str = "text"
    fixtures: Optional[str] = None
    jobs: int = 1

    def budget(self) -> Optional[Budget]:
        if self.cap is None and self.intermediate_cap == "inferred":
            return None
        cap = 3 if self.cap is None else self.cap
        try:
            return Budget.uniform(cap, intermediate_grade_cap=self.intermediate_cap)
        except ValueError as err:
            raise ConfigError(str(err)) from None


def resolve_model(name: str, fx: Fixtures, delta_variant: str = "standard"):
    if delta_variant not in DELTA_VARIANTS:
        raise ConfigError(f"unknown delta variant {delta_variant!r}")

    def base():
        return FinRel(fx.carriers, delta_variant=delta_variant)

    if name == "finrel":
        return base()
    if name == "cokleisli-finrel":
        return CoKleisli(base())
    if name == "split-cokleisli-finrel":
        return default_split_cokleisli(base())
    if name == "polydiff":
        return PolyDiff(fx.dims)
    if name.startswith("slice:") and "@" in name:
        obj_text, _, under = name[len("slice:"):].partition("@")
        try:
            ctx = parse_obj(obj_text)
        except ParseError as err:
            raise ConfigError(f"bad slice object {obj_text!r}: {err}") from None
        known = fx.dims if under == "polydiff" else fx.carriers
        missing = sorted(n for n in _base_names(ctx) if n not in known)
        if missing:
            raise ConfigError(f"slice object mentions undeclared object(s) {', '.join(missing)}")
        return slice_model(resolve_model(under, fx, delta_variant), ctx)
    raise ConfigError(f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}")


def _base_names(o):
    if isinstance(o, Base):
        yield o.name
    for part in ("left", "right", "inner"):
        if hasattr(o, part):
            yield from _base_names(getattr(o, part))


# ------------------------------------------------------------------ output

def _witness_text(w) -> str:
    if w is None:
        return ""
    return json.dumps(w, sort_keys=True)


def render_text(report) -> str:
    lines = [f"suite {report.suite} on {report.model}"]
    width = max([len(r.id) for r in report.equations] + [4])
    for r in report.equations:
        mark = "skip" if r.verdict == "Unsupported" else ("ok  " if r.passed else "FAIL")
        extra = ""
        if r.verdict == "Unsupported":
            extra = f"  ({r.reason})"
        elif r.expect not in (r.verdict, "Satisfied") or r.verdict in ("Unequal", "Violated", "Vacuous"):
            extra = f"  expect {r.expect}"
        lines.append(f"  {mark} {r.id:<{width}}  {r.verdict}{extra}")
        if r.witness is not None and r.verdict != "Unsupported":
            lines.append(f"       witness {_witness_text(r.witness)}")
        if not r.passed:
            lines.append(f"       lhs {r.lhs}")
            lines.append(f"       rhs {r.rhs}")
    t = report.totals
    lines.append(f"  {t['passed']}/{t['equations']} passed, {t['Unsupported']} unsupported, "
                 f"{report.elapsed_ms:.0f} ms")
    return "\n".join(lines)


def render_list(verbose: bool) -> str:
    rows = suites.list_suites()
    width = max(len(r[0]) for r in rows)
    out = [f"{n:<{width}}  {c:>3}  needs {caps}" for n, c, caps in rows]
    if verbose:
        for name, _, _ in rows:
            s = suites.get(name)
            out.append("")
            out.append(f"{name}:")
            for i, d in s.ids:
                out.append(f"  {i}: {d}")
        out.append("")
        out.append("completeness manifest (axiom family -> suites):")
        for label, names in suites.MANIFEST.items():
            out.append(f"  {label}: {', '.join(names)}")
    return "\n".join(out)


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catdiff", description="check storage and differential "
                                "category axioms on bounded fragments of concrete models")
    p.add_argument("command", nargs="?", choices=["run"], default="run")
    p.add_argument("--model", default="finrel", help=" | ".join(MODEL_NAMES))
    p.add_argument("--suite", action="append", default=[], help="suite name (repeatable)")
    p.add_argument("--cap", type=int, help="grade cap for domain and codomain (default: suite's)")
    p.add_argument("--intermediate-cap", default="inferred",
                   help="cap for intermediate objects, or 'inferred'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta-variant", default="standard", choices=sorted(DELTA_VARIANTS))
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("--fixtures", help="fixture file (else $CATDIFF_FIXTURES)")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    p.add_argument("--verbose", action="store_true")
    return p


def config_from_args(ns) -> RunConfig:
    ic = ns.intermediate_cap
    if ic != "inferred":
        try:
            ic = int(ic)
        except ValueError:
            raise ConfigError(f"--intermediate-cap must be an integer or 'inferred', got {ic!r}") from None
    if ns.cap is not None and ns.cap < 0:
        raise ConfigError("--cap must be >= 0")
    if not 0 <= ns.seed < 2 ** 64:
        raise ConfigError("--seed must fit in 64 bits")
    if ns.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    return RunConfig(model=ns.model, suites=list(ns.suite), cap=ns.cap, intermediate_cap=ic,
                     seed=ns.seed, delta_variant=ns.delta_variant, output=ns.output,
                     fixtures=ns.fixtures, jobs=ns.jobs)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    fx = load(cfg.fixtures)
    model = resolve_model(cfg.model, fx, cfg.delta_variant)
    names = cfg.suites or [n for n, _, _ in suites.list_suites()]
    for n in names:
        suites.get(n)               # fail fast on a typo
    budget = cfg.budget()
    ok = True
    for n in names:
        report = suites.run(model, n, budget, seed=cfg.seed, jobs=cfg.jobs)
        ok = ok and report.ok
        if cfg.output == "json":
            out.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
        else:
            out.write(render_text(report) + "\n")
        out.flush()
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.list:
        print(render_list(ns.verbose))
        return 0
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (ConfigError, FixtureError, UnknownSuite) as err:
        print(f"catdiff: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
