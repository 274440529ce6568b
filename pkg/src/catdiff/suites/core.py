"""Suite item types and the runner."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ..expr import MorExpr, pretty
from ..model import (Budget, Equal, EquationResult, Report, Unequal, Unsupported, UnknownSuite,
                     check_equation, result_from_verdict, stats_json, witness_json)


@dataclass
class Check:
    id: str
    description: str
    lhs: MorExpr
    rhs: MorExpr
    expect: str = "Equal"
    cap_scale: Fraction = Fraction(1)
    model: object = None            # checked in kit.model unless given


@dataclass
class Conditional:
    """premises (all Equal) imply conclusion. Reports Satisfied, Vacuous or
    Violated."""
    id: str
    description: str
    premises: list
    conclusion: tuple
    model: object = None


@dataclass
class Thunk:
    """Anything else: fn(budget) -> (verdict, lhs text, rhs text)."""
    id: str
    description: str
    fn: Callable
    expect: str = "Equal"


@dataclass
class Skip:
    id: str
    description: str
    reason: str


@dataclass
class Suite:
    name: str
    ids: list                       # [(id, description)] in declared order
    build: Callable                 # kit -> list of items
    requires: tuple = ()            # alternatives: any one frozenset suffices
    labels: tuple = ()              # axiom labels covered (completeness manifest)
    default_budget: Budget = field(default_factory=lambda: Budget.uniform(3))

    def supported_by(self, model) -> Optional[str]:
        if not self.requires:
            return None
        caps = set(getattr(model, "capabilities", ()))
        if any(set(r) <= caps for r in self.requires):
            return None
        need = " or ".join("+".join(sorted(r)) for r in self.requires)
        return f"model {model.name} lacks capability {need}"


def scaled(budget: Budget, s: Fraction) -> Budget:
    if s == 1:
        return budget
    ic = budget.intermediate_grade_cap
    return Budget(int(budget.domain_grade_cap * s), int(budget.codomain_grade_cap * s),
                  ic if ic == "inferred" else int(ic * s), budget.max_pairs)


def _result_text(i, desc, l, r, v, expect):
    res = EquationResult(i, desc, l, r, type(v).__name__, expect)
    if isinstance(v, (Equal, Unequal)):
        res.fragment = stats_json(v.fragment)
    if isinstance(v, Unequal):
        res.witness = witness_json(v.witness)
    if isinstance(v, Unsupported):
        res.reason = v.reason
    return res


def _run_item(item, model, budget) -> EquationResult:
    if isinstance(item, Skip):
        return EquationResult(item.id, item.description, "", "", "Unsupported", reason=item.reason)
    if isinstance(item, Check):
        m = item.model or model
        b = scaled(budget, item.cap_scale)
        v = check_equation(m, item.lhs, item.rhs, b)
        return result_from_verdict(item.id, item.description, item.lhs, item.rhs, v, item.expect)
    if isinstance(item, Thunk):
        try:
            v, l, r = item.fn(budget)
        except Exception as err:          # reported, never silently dropped
            v, l, r = Unsupported(f"{type(err).__name__}: {err}"), "", ""
        return _result_text(item.id, item.description, l, r, v, item.expect)
    if isinstance(item, Conditional):
        m = item.model or model
        for lhs, rhs in item.premises:
            v = check_equation(m, lhs, rhs, budget)
            if isinstance(v, Unsupported):
                return result_from_verdict(item.id, item.description, lhs, rhs, v)
            if not isinstance(v, Equal):
                r = EquationResult(item.id, item.description, pretty(lhs), pretty(rhs), "Vacuous")
                r.reason = "premise fails"
                r.expect = "Satisfied"
                r.witness = witness_json(v.witness)
                return r
        lhs, rhs = item.conclusion
        v = check_equation(m, lhs, rhs, budget)
        r = result_from_verdict(item.id, item.description, lhs, rhs, v)
        if isinstance(v, Equal):
            r.verdict = "Satisfied"
        elif isinstance(v, Unequal):
            r.verdict = "Violated"
        r.expect = "Satisfied"
        return r
    raise TypeError(item)


def run_suite_obj(suite: Suite, model, budget: Optional[Budget] = None, seed: int = 0,
                  jobs: int = 1) -> Report:
    budget = budget or suite.default_budget
    t0 = time.perf_counter()
    report = Report(suite.name, model.name)
    reason = suite.supported_by(model)
    if reason is None:
        try:
            kit = model.kit()
        except Exception as err:
            reason = str(err)
    if reason is not None:
        report.equations = [EquationResult(i, d, "", "", "Unsupported", reason=reason)
                            for i, d in suite.ids]
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
        return report
    kit.seed = seed
    if hasattr(kit, "inner"):
        kit.inner.seed = seed
    items = suite.build(kit)
    got = [it.id for it in items]
    want = [i for i, _ in suite.ids]
    if got != want:
        raise AssertionError(f"suite {suite.name} built {got}, declared {want}")
    final = kit.model
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            report.equations = list(ex.map(lambda it: _run_item(it, final, budget), items))
    else:
        report.equations = [_run_item(it, final, budget) for it in items]
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


__all__ = ["Check", "Conditional", "Thunk", "Skip", "Suite", "run_suite_obj", "scaled",
           "UnknownSuite", "stats_json"]
