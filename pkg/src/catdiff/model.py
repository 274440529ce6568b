"""Model contract, equation checker and suite reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from typing import Any, Optional, Union

from .expr import MorExpr, ObjExpr, pretty, typecheck, ExprError


class TypeMismatch(Exception):
    pass


class UnknownSuite(Exception):
    pass


class UnsupportedConstruct(Exception):
    """Raised by a model that cannot interpret some constructor."""


@dataclass(frozen=True)
class Budget:
    domain_grade_cap: int = 3
    codomain_grade_cap: int = 3
    intermediate_grade_cap: Union[int, str] = "inferred"
    max_pairs: int = 2_000_000

    def __post_init__(self):
        if self.domain_grade_cap < 0 or self.codomain_grade_cap < 0:
            raise ValueError("caps must be >= 0")
        if self.max_pairs <= 0:
            raise ValueError("max_pairs must be > 0")
        ic = self.intermediate_grade_cap
        if not (ic == "inferred" or (isinstance(ic, int) and ic >= 0)):
            raise ValueError("intermediate_grade_cap must be 'inferred' or an int >= 0")

    @classmethod
    def uniform(cls, cap: int, **kw) -> "Budget":
        return cls(cap, cap, **kw)

    def fallback_cap(self) -> int:
        # used only where grade inference cannot bound an intermediate
        if self.intermediate_grade_cap == "inferred":
            return self.domain_grade_cap + self.codomain_grade_cap
        return self.intermediate_grade_cap

    def doubled(self) -> "Budget":
        ic = self.intermediate_grade_cap
        return Budget(2 * self.domain_grade_cap, 2 * self.codomain_grade_cap,
                      ic if ic == "inferred" else 2 * ic, self.max_pairs)


@dataclass(frozen=True)
class FragmentStats:
    domain_elements_tested: int
    codomain_elements_tested: int
    membership_queries: int
    caps_used: Budget
    mode: str = "fragment"          # or "symbolic"
    fallback_used: bool = False     # an intermediate was bounded by the fallback cap


@dataclass(frozen=True)
class Equal:
    fragment: FragmentStats


@dataclass(frozen=True)
class Unequal:
    witness: Any
    fragment: Optional[FragmentStats] = None


@dataclass(frozen=True)
class Unsupported:
    reason: str


Verdict = Union[Equal, Unequal, Unsupported]


def verdict_name(v) -> str:
    return type(v).__name__


class Model:
    """Interpretation contract.

    Subclasses provide ``knows`` (primitive registry), ``capabilities`` and
    ``compare``. Relational models should derive from RelationalModel.
    """
    name = "model"
    capabilities: frozenset = frozenset()

    def knows(self, name: str, dom: ObjExpr, cod: ObjExpr) -> bool:
        raise NotImplementedError

    def compare(self, lhs: MorExpr, rhs: MorExpr, budget: Budget) -> Verdict:
        raise NotImplementedError

    def kit(self):
        """Structure kit used by suite templates (see suites.kits)."""
        raise UnsupportedConstruct(f"{self.name} has no suite kit")


@dataclass(frozen=True)
class RelWitness:
    x: Any
    y: Any
    lhs_member: bool
    rhs_member: bool

    def to_json(self):
        from .finrel.elements import to_json
        return {"x": to_json(self.x), "y": to_json(self.y),
                "lhs": self.lhs_member, "rhs": self.rhs_member}


class RelationalModel(Model):
    """Models whose maps are relations checked by membership matrices."""

    def dom_elements(self, o: ObjExpr, cap: int) -> list:
        raise NotImplementedError

    def cod_elements(self, o: ObjExpr, cap: int) -> list:
        raise NotImplementedError

    def relation(self, e: MorExpr, budget: Budget):
        raise NotImplementedError

    def fallback_hits(self) -> int:
        return 0

    def member(self, e: MorExpr, x, y, budget: Optional[Budget] = None) -> bool:
        return self.relation(e, budget or Budget()).member(x, y)

    def matrix(self, rel, xs, ys) -> set:
        """Set of (i, j) with (xs[i], ys[j]) in rel."""
        xi = {x: i for i, x in enumerate(xs)}
        out = set()
        if rel.bwd_finite:
            for j, y in enumerate(ys):
                for x in rel.backward(y):
                    i = xi.get(x)
                    if i is not None:
                        out.add((i, j))
        elif rel.fwd_finite:
            yj = {y: j for j, y in enumerate(ys)}
            for i, x in enumerate(xs):
                for y in rel.forward(x):
                    j = yj.get(y)
                    if j is not None:
                        out.add((i, j))
        else:
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    if rel.member(x, y):
                        out.add((i, j))
        return out

    def compare(self, lhs, rhs, budget):
        d, c = typecheck(lhs)
        xs = self.dom_elements(d, budget.domain_grade_cap)
        ys = self.cod_elements(c, budget.codomain_grade_cap)
        if len(xs) * len(ys) > budget.max_pairs:
            return Unsupported(f"fragment of {len(xs)}x{len(ys)} pairs exceeds max_pairs")
        before = self.fallback_hits()
        ml = self.matrix(self.relation(lhs, budget), xs, ys)
        mr = self.matrix(self.relation(rhs, budget), xs, ys)
        stats = FragmentStats(len(xs), len(ys), 2 * len(xs) * len(ys), budget,
                              fallback_used=self.fallback_hits() > before)
        diff = ml ^ mr
        if not diff:
            return Equal(stats)
        i, j = min(diff)
        return Unequal(RelWitness(xs[i], ys[j], (i, j) in ml, (i, j) in mr), stats)


def check_equation(model: Model, lhs: MorExpr, rhs: MorExpr, budget: Budget) -> Verdict:
    try:
        tl = typecheck(lhs, model.knows)
        tr = typecheck(rhs, model.knows)
    except ExprError as err:
        if type(err).__name__ == "UnknownPrimitive":
            return Unsupported(str(err))
        raise
    if tl != tr:
        raise TypeMismatch(f"lhs types {tl} vs rhs types {tr}")
    try:
        return model.compare(lhs, rhs, budget)
    except UnsupportedConstruct as err:
        return Unsupported(str(err))


# ------------------------------------------------------------------ reports

@dataclass
class EquationResult:
    id: str
    description: str
    lhs: str
    rhs: str
    verdict: str
    expect: str = "Equal"
    witness: Any = None
    fragment: Any = None
    reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.verdict in ("Unsupported", "Vacuous"):
            return True
        if self.verdict == "Satisfied":
            return True
        return self.verdict == self.expect

    def to_json(self):
        d = {"id": self.id, "description": self.description, "lhs": self.lhs,
             "rhs": self.rhs, "verdict": self.verdict, "expect": self.expect}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        d["fragment"] = self.fragment
        return d


@dataclass
class Report:
    suite: str
    model: str
    equations: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def totals(self) -> dict:
        t = {"equations": len(self.equations)}
        for k in ("Equal", "Unequal", "Unsupported", "Satisfied", "Vacuous", "Violated"):
            t[k] = sum(1 for r in self.equations if r.verdict == k)
        t["passed"] = sum(1 for r in self.equations if r.passed)
        t["failed"] = t["equations"] - t["passed"]
        return t

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.equations)

    def to_json(self) -> dict:
        return {"suite": self.suite, "model": self.model,
                "equations": [r.to_json() for r in self.equations],
                "totals": self.totals, "elapsed_ms": round(self.elapsed_ms, 3)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def stats_json(s: Optional[FragmentStats]):
    if s is None:
        return None
    d = asdict(s)
    d["caps_used"] = asdict(s.caps_used)
    return d


def witness_json(w):
    if w is None:
        return None
    if hasattr(w, "to_json"):
        return w.to_json()
    return w


def result_from_verdict(eq_id, description, lhs, rhs, v, expect="Equal") -> EquationResult:
    r = EquationResult(eq_id, description, pretty(lhs), pretty(rhs), verdict_name(v), expect)
    if isinstance(v, Equal):
        r.fragment = stats_json(v.fragment)
    elif isinstance(v, Unequal):
        r.witness = witness_json(v.witness)
        r.fragment = stats_json(v.fragment)
    else:
        r.reason = v.reason
    return r


def run_suite(model: Model, suite_name: str, budget: Optional[Budget] = None,
              seed: int = 0, jobs: int = 1) -> Report:
    from .suites import run as _run
    return _run(model, suite_name, budget, seed=seed, jobs=jobs)


def timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    return out, (time.perf_counter() - t0) * 1000.0
