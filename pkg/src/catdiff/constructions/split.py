"""Splitting linear idempotents of a storage model.

Objects are Base names bound to (underlying object, idempotent e). A split
map f: e -> e' is an underlying map with e ; f ; e' = f.
"""
from __future__ import annotations

from typing import Optional

from .. import expr as E
from ..expr import Bang, BangHom, Base, Comp, Prim, Prod, Proj0, Proj1, comp, prod_hom
from ..finrel import TableRel
from ..model import Budget, Equal, Model, UnsupportedConstruct, check_equation
from . import storage
from .cokleisli import CoKleisli


class NotIdempotent(Exception):
    pass


class NotLinear(Exception):
    pass


class InvalidSplitMap(Exception):
    pass


class SplitModel(Model):
    def __init__(self, under: Model, objects: Optional[dict] = None, prims: Optional[dict] = None,
                 budget: Optional[Budget] = None):
        self.under = under
        self.objects: dict = dict(objects or {})   # name -> (underlying obj, idempotent expr)
        self.prims: dict = dict(prims or {})       # name -> (dom, cod, underlying expr)
        self.budget = budget or Budget.uniform(3)
        self.name = f"split-{under.name}"
        self.capabilities = under.capabilities - {"tensor-representation"}
        self._memo: dict = {}

    def _copy(self, **kw):
        m = SplitModel(kw.get("under", self.under), kw.get("objects", self.objects),
                       kw.get("prims", self.prims), self.budget)
        m.name = self.name
        return m

    # -------------------------------------------------------- objects
    def U(self, o):
        if isinstance(o, Base):
            return self.objects[o.name][0] if o.name in self.objects else o
        if isinstance(o, Prod):
            return Prod(self.U(o.left), self.U(o.right))
        if isinstance(o, Bang):
            return Bang(self.U(o.inner))
        if isinstance(o, E.Terminal):
            return o
        raise UnsupportedConstruct(f"split model has no object {E.pretty_obj(o)}")

    def E(self, o):
        if isinstance(o, Base):
            if o.name in self.objects:
                return self.objects[o.name][1]
            return E.Id(o)
        if isinstance(o, Prod):
            return prod_hom(self.E(o.left), self.E(o.right))
        if isinstance(o, Bang):
            return BangHom(self.E(o.inner))
        return E.Id(self.U(o))

    def add_object(self, name: str, under_obj, e: E.MorExpr) -> "SplitModel":
        if E.typecheck(e, self.under.knows) != (under_obj, under_obj):
            raise E.DomainMismatch(e, (under_obj, under_obj), E.typecheck(e))
        v = check_equation(self.under, Comp(e, e), e, self.budget)
        if not isinstance(v, Equal):
            raise NotIdempotent(f"{E.pretty(e)} is not idempotent: {v}")
        v = storage.is_linear(self.under, e, self.budget)
        if not isinstance(v, Equal):
            raise NotLinear(f"{E.pretty(e)} is not linear: {v}")
        return self._copy(objects={**self.objects, name: (under_obj, e)})

    def add_map(self, name: str, dom, cod, f: E.MorExpr):
        if E.typecheck(f, self.under.knows) != (self.U(dom), self.U(cod)):
            raise InvalidSplitMap(f"{name} has the wrong underlying type")
        v = check_equation(self.under, comp(self.E(dom), f, self.E(cod)), f, self.budget)
        if not isinstance(v, Equal):
            raise InvalidSplitMap(f"e ; {name} ; e' != {name}: {v}")
        return self._copy(prims={**self.prims, name: (dom, cod, f)}), Prim(name, dom, cod)

    def with_under(self, under):
        return self._copy(under=under)

    def knows(self, name, dom, cod):
        if name in self.prims:
            return self.prims[name][:2] == (dom, cod)
        try:
            return self.under.knows(name, self.U(dom), self.U(cod))
        except UnsupportedConstruct:
            return False

    # -------------------------------------------------------- translation
    def translate(self, e):
        got = self._memo.get(e)
        if got is None:
            got = self._tr(e)
            self._memo[e] = got
        return got

    def _tr(self, e):
        T, U = self.translate, self.U
        d, c = E.typecheck(e)
        if isinstance(e, E.Id):
            return self.E(e.o)
        if isinstance(e, E.Comp):
            return Comp(T(e.f), T(e.g))
        if isinstance(e, E.Pair):
            return E.Pair(T(e.f), T(e.g))
        if isinstance(e, E.Proj0):
            return Comp(self.E(d), Proj0(U(e.a), U(e.b)))
        if isinstance(e, E.Proj1):
            return Comp(self.E(d), Proj1(U(e.a), U(e.b)))
        if isinstance(e, E.ToTerminal):
            return E.ToTerminal(U(d))
        if isinstance(e, E.Zero):
            return E.Zero(U(d), U(c))
        if isinstance(e, E.Plus):
            return E.Plus(T(e.f), T(e.g))
        if isinstance(e, E.BangHom):
            return BangHom(T(e.f))
        if isinstance(e, E.DiffD):
            return E.DiffD(T(e.f))
        if isinstance(e, E.Prim):
            if e.name in self.prims:
                return self.prims[e.name][2]
            return comp(self.E(d), Prim(e.name, U(d), U(c)), self.E(c))
        raise UnsupportedConstruct(f"split model cannot interpret {type(e).__name__}")

    def compare(self, lhs, rhs, budget):
        return check_equation(self.under, self.translate(lhs), self.translate(rhs), budget)

    def kit(self):
        from ..suites.kits import SplitKit
        return SplitKit(self)


def split_idempotents(model: Model, budget: Optional[Budget] = None) -> SplitModel:
    return SplitModel(model, budget=budget)


def default_split_cokleisli(base=None) -> SplitModel:
    """A, B with identity idempotents; C with the partial identity on c0."""
    under = CoKleisli(base)
    C = Base("C")
    c0 = under.base.enumerate(C, 1)[0]
    u2 = under.extend_base({"keep_c0": (C, C, TableRel(pairs=[(c0, c0)]))})
    u2, keep = u2.lift("e_C", Prim("keep_c0", C, C))
    m = SplitModel(u2)
    m = m.add_object("A", Base("A"), E.Id(Base("A")))
    m = m.add_object("B", Base("B"), E.Id(Base("B")))
    m = m.add_object("C", C, keep)
    m.name = "split-cokleisli-finrel"
    return m
