"""Named equation suites and their registry."""
from __future__ import annotations

from typing import Optional

from ..model import Budget, Report, UnknownSuite
from .core import Check, Conditional, Skip, Suite, Thunk, run_suite_obj
from .defs import SUITES

REGISTRY: dict = {s.name: s for s in SUITES}

# axiom label -> suite names that check it
MANIFEST: dict = {}
for _s in SUITES:
    for _label in _s.labels:
        MANIFEST.setdefault(_label, []).append(_s.name)


def get(name: str) -> Suite:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(REGISTRY)}") from None


def list_suites():
    """[(name, equation count, required capabilities as text)]"""
    out = []
    for s in SUITES:
        need = " | ".join("+".join(sorted(r)) for r in s.requires) or "-"
        out.append((s.name, len(s.ids), need))
    return out


def suite_equations(name: str, model, seed: int = 0):
    """Build the items of a suite against ``model``; returns (items, final model)."""
    s = get(name)
    kit = model.kit()
    kit.seed = seed
    if hasattr(kit, "inner"):
        kit.inner.seed = seed
    items = s.build(kit)
    return items, kit.model


def run(model, name: str, budget: Optional[Budget] = None, seed: int = 0, jobs: int = 1) -> Report:
    return run_suite_obj(get(name), model, budget, seed, jobs)


__all__ = ["REGISTRY", "MANIFEST", "Suite", "Check", "Conditional", "Thunk", "Skip",
           "get", "list_suites", "suite_equations", "run", "UnknownSuite"]
