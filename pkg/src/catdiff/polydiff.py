"""Exact polynomial maps Q^n -> Q^m and their symbolic differential.

Convention: D[f] takes the tangent block first. For f with n inputs,
D[f] has 2n inputs (u_0..u_{n-1}, x_0..x_{n-1}) and component j is
sum_i u_i * (d f_j / d x_i)(x).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import expr as E
from .model import Budget, Equal, FragmentStats, Model, Unequal, UnsupportedConstruct


class DimMismatch(ValueError):
    pass


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero Fraction."""
    __slots__ = ("n", "terms", "_canon")

    def __init__(self, n: int, terms: Optional[dict] = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self._canon = None

    @classmethod
    def const(cls, c, n):
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def var(cls, i, n):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    def canon(self) -> tuple:
        if self._canon is None:
            self._canon = tuple(sorted(self.terms.items()))
        return self._canon

    def __eq__(self, other):
        return isinstance(other, Poly) and self.n == other.n and self.canon() == other.canon()

    def __hash__(self):
        return hash((self.n, self.canon()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(self.n, out)

    def __neg__(self):
        return Poly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.n, {k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return Poly(self.n, out)

    def deriv(self, i):
        out = {}
        for k, v in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                out[tuple(kk)] = v * k[i]
        return Poly(self.n, out)

    def embed(self, offset, total):
        """Same polynomial with variable i renamed to offset+i among ``total``."""
        pad_r = total - offset - self.n
        return Poly(total, {(0,) * offset + k + (0,) * pad_r: v for k, v in self.terms.items()})

    def subst(self, args: list["Poly"]) -> "Poly":
        """Substitute args[i] for variable i; result lives in args' ring."""
        m = args[0].n if args else 0
        powers: dict = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = Poly.const(1, m) if e == 0 else pw(i, e - 1) * args[i]
            return powers[key]

        out = Poly(m)
        acc: dict = {}
        for k, v in self.terms.items():
            term = Poly.const(v, m)
            for i, e in enumerate(k):
                if e:
                    term = term * pw(i, e)
            for kk, vv in term.terms.items():
                acc[kk] = acc.get(kk, 0) + vv
        out = Poly(m, acc)
        return out

    def __call__(self, point):
        total = Fraction(0)
        for k, v in self.terms.items():
            t = v
            for xi, e in zip(point, k):
                if e:
                    t *= Fraction(xi) ** e
            total += t
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"{v}" + (f"*{mono}" if mono else "") if v != 1 or not mono else mono)
        return " + ".join(parts)


@dataclass(frozen=True)
class PolyMap:
    dom_dim: int
    cod_dim: int
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.cod_dim:
            raise DimMismatch("component count differs from cod_dim")
        for p in self.components:
            if p.n != self.dom_dim:
                raise DimMismatch("component ring differs from dom_dim")

    def __call__(self, point):
        return tuple(p(point) for p in self.components)

    def __add__(self, other):
        _same_dims(self, other)
        return PolyMap(self.dom_dim, self.cod_dim,
                       tuple(a + b for a, b in zip(self.components, other.components)))

    def then(self, g: "PolyMap") -> "PolyMap":
        """Diagram-order composite: self first, then g."""
        if self.cod_dim != g.dom_dim:
            raise DimMismatch("composite dims")
        args = list(self.components)
        if not args:
            return PolyMap(self.dom_dim, g.cod_dim,
                           tuple(Poly(self.dom_dim, {(0,) * self.dom_dim: p.terms.get((), 0)})
                                 for p in g.components))
        return PolyMap(self.dom_dim, g.cod_dim, tuple(p.subst(args) for p in g.components))

    def __repr__(self):
        return f"PolyMap({self.dom_dim}->{self.cod_dim}: " + "; ".join(map(repr, self.components)) + ")"


def _same_dims(f, g):
    if (f.dom_dim, f.cod_dim) != (g.dom_dim, g.cod_dim):
        raise DimMismatch(f"{f.dom_dim}->{f.cod_dim} vs {g.dom_dim}->{g.cod_dim}")


def identity(n):
    return PolyMap(n, n, tuple(Poly.var(i, n) for i in range(n)))


def projection(n, lo, hi):
    return PolyMap(n, hi - lo, tuple(Poly.var(i, n) for i in range(lo, hi)))


def zero_map(n, m):
    return PolyMap(n, m, tuple(Poly(n) for _ in range(m)))


def pair(f, g):
    if f.dom_dim != g.dom_dim:
        raise DimMismatch("pair domains")
    return PolyMap(f.dom_dim, f.cod_dim + g.cod_dim, f.components + g.components)


def differentiate(f: PolyMap) -> PolyMap:
    n = f.dom_dim
    comps = []
    for p in f.components:
        acc = Poly(2 * n)
        for i in range(n):
            d = p.deriv(i)
            if not d.is_zero():
                acc = acc + Poly.var(i, 2 * n) * d.embed(n, 2 * n)
        comps.append(acc)
    return PolyMap(2 * n, f.cod_dim, tuple(comps))


SYMBOLIC = FragmentStats(0, 0, 0, Budget(0, 0), mode="symbolic")


@dataclass(frozen=True)
class PolyWitness:
    component: int
    difference: str
    point: tuple
    lhs_value: str
    rhs_value: str

    def to_json(self):
        return {"component": self.component, "difference": self.difference,
                "point": [str(p) for p in self.point], "lhs": self.lhs_value, "rhs": self.rhs_value}


def _distinguishing_point(p: Poly, n: int, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(200):
        pt = tuple(rng.randint(-7, 7) for _ in range(n))
        if p(pt) != 0:
            return pt
    return tuple([0] * n)


def eq_symbolic(f: PolyMap, g: PolyMap):
    _same_dims(f, g)
    for j, (a, b) in enumerate(zip(f.components, g.components)):
        if a != b:
            diff = a - b
            pt = _distinguishing_point(diff, f.dom_dim)
            return Unequal(PolyWitness(j, repr(diff), pt, str(a(pt)), str(b(pt))), SYMBOLIC)
    return Equal(SYMBOLIC)


def random_poly(dom_dim: int, cod_dim: int, max_degree: int, seed: int,
                max_terms: int = 4) -> PolyMap:
    rng = random.Random(f"poly:{dom_dim}:{cod_dim}:{max_degree}:{seed}")
    comps = []
    for _ in range(cod_dim):
        terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            deg = rng.randint(0, max_degree)
            e = [0] * dom_dim
            for _ in range(deg if dom_dim else 0):
                e[rng.randrange(dom_dim)] += 1
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 4]), rng.choice([1, 1, 2, 3]))
            k = tuple(e)
            terms[k] = terms.get(k, 0) + c
        comps.append(Poly(dom_dim, terms))
    return PolyMap(dom_dim, cod_dim, tuple(comps))


def taylor_check(f: PolyMap):
    """First-order Taylor coefficient of f(x + t u) - f(x) equals D[f](u, x)."""
    n = f.dom_dim
    total = 2 * n + 1
    t = Poly.var(2 * n, total)
    args = [Poly.var(n + i, total) + t * Poly.var(i, total) for i in range(n)]
    df = differentiate(f)
    for j, p in enumerate(f.components):
        if n == 0:
            lin = Poly(0)
        else:
            shifted = p.subst(args)
            lin = Poly(2 * n, {k[:-1]: v for k, v in shifted.terms.items() if k[-1] == 1})
        if lin != df.components[j]:
            diff = lin - df.components[j]
            return Unequal(PolyWitness(j, repr(diff), (), repr(lin), repr(df.components[j])), SYMBOLIC)
    return Equal(SYMBOLIC)


def is_homogeneous_linear(f: PolyMap) -> bool:
    return all(sum(k) == 1 for p in f.components for k in p.terms)


# ---------------------------------------------------------------- model

class PolyDiff(Model):
    """Objects are dimensions: Base names are registered with a dimension,
    Terminal is 0 and Prod adds."""
    name = "polydiff"
    capabilities = frozenset({"cartesian", "additive", "differential"})

    def __init__(self, dims: Optional[dict] = None, prims: Optional[dict] = None):
        self.dims = dict(dims or {"A": 2, "B": 1, "C": 3})
        self.prims: dict = dict(prims or {})
        self._memo: dict = {}

    def extend(self, prims: dict) -> "PolyDiff":
        m = PolyDiff(self.dims, {**self.prims, **prims})
        m.name = self.name
        return m

    def dim(self, o) -> int:
        if isinstance(o, E.Base):
            if o.name not in self.dims:
                raise UnsupportedConstruct(f"unknown base {o.name}")
            return self.dims[o.name]
        if isinstance(o, E.Terminal):
            return 0
        if isinstance(o, E.Prod):
            return self.dim(o.left) + self.dim(o.right)
        raise UnsupportedConstruct(f"polydiff has no object {E.pretty_obj(o)}")

    def knows(self, name, dom, cod):
        f = self.prims.get(name)
        if f is None:
            return False
        try:
            return (f.dom_dim, f.cod_dim) == (self.dim(dom), self.dim(cod))
        except UnsupportedConstruct:
            return False

    def interpret(self, e: E.MorExpr) -> PolyMap:
        got = self._memo.get(e)
        if got is None:
            got = self._interp(e)
            self._memo[e] = got
        return got

    def _interp(self, e):
        I = self.interpret  # noqa: E741
        if isinstance(e, E.Id):
            return identity(self.dim(e.o))
        if isinstance(e, E.Comp):
            return I(e.f).then(I(e.g))
        if isinstance(e, E.Pair):
            return pair(I(e.f), I(e.g))
        if isinstance(e, E.Proj0):
            a, b = self.dim(e.a), self.dim(e.b)
            return projection(a + b, 0, a)
        if isinstance(e, E.Proj1):
            a, b = self.dim(e.a), self.dim(e.b)
            return projection(a + b, a, a + b)
        if isinstance(e, E.ToTerminal):
            return zero_map(self.dim(e.o), 0)
        if isinstance(e, E.Zero):
            return zero_map(self.dim(e.dom), self.dim(e.cod))
        if isinstance(e, E.Plus):
            return I(e.f) + I(e.g)
        if isinstance(e, E.DiffD):
            return differentiate(I(e.f))
        if isinstance(e, E.Prim):
            if e.name not in self.prims:
                raise UnsupportedConstruct(f"unknown primitive {e.name}")
            return self.prims[e.name]
        raise UnsupportedConstruct(f"polydiff cannot interpret {type(e).__name__}")

    def compare(self, lhs, rhs, budget):
        return eq_symbolic(self.interpret(lhs), self.interpret(rhs))

    def kit(self):
        from .suites.kits import PolyKit
        return PolyKit(self)
