"""Simple slice over a context object A.

A slice map X -> Y is an underlying map A x X -> Y. Slice expressions reuse
the ordinary IR; ``translate`` turns them into underlying expressions.
"""
from __future__ import annotations

from typing import Optional

from .. import expr as E
from ..expr import BangHom, Comp, Pair, Prim, Prod, Proj0, Proj1, Zero, comp
from ..model import Model, UnsupportedConstruct, check_equation


class SliceModel(Model):
    def __init__(self, under: Model, ctx: E.ObjExpr, prims: Optional[dict] = None):
        self.under = under
        self.ctx = ctx
        self.prims: dict = dict(prims or {})    # name -> (dom, cod, underlying expr on ctx x dom)
        self.name = f"slice:{E.pretty_obj(ctx)}@{under.name}"
        self.capabilities = under.capabilities - {"tensor-representation"}
        self._memo: dict = {}

    def extend(self, prims: dict) -> "SliceModel":
        m = SliceModel(self.under, self.ctx, {**self.prims, **prims})
        m.name = self.name
        return m

    def with_under(self, under: Model) -> "SliceModel":
        m = SliceModel(under, self.ctx, self.prims)
        m.name = self.name
        return m

    def register(self, name: str, dom, cod, under_expr: E.MorExpr):
        d, c = E.typecheck(under_expr, self.under.knows)
        if (d, c) != (Prod(self.ctx, dom), cod):
            raise E.DomainMismatch(under_expr, Prod(self.ctx, dom), d)
        return self.extend({name: (dom, cod, under_expr)}), Prim(name, dom, cod)

    def knows(self, name, dom, cod):
        if name in self.prims:
            return self.prims[name][:2] == (dom, cod)
        return self.under.knows(name, dom, cod)

    def translate(self, e: E.MorExpr) -> E.MorExpr:
        got = self._memo.get(e)
        if got is None:
            got = self._tr(e)
            self._memo[e] = got
        return got

    def _tr(self, e):
        a = self.ctx
        T = self.translate
        d, c = E.typecheck(e)
        p0, p1 = Proj0(a, d), Proj1(a, d)
        if isinstance(e, E.Id):
            return p1
        if isinstance(e, E.Comp):
            return Comp(Pair(p0, T(e.f)), T(e.g))
        if isinstance(e, E.Pair):
            return Pair(T(e.f), T(e.g))
        if isinstance(e, (E.Proj0, E.Proj1)):
            return Comp(p1, e)
        if isinstance(e, E.ToTerminal):
            return E.ToTerminal(Prod(a, d))
        if isinstance(e, E.Zero):
            return Zero(Prod(a, d), c)
        if isinstance(e, E.Plus):
            return E.Plus(T(e.f), T(e.g))
        if isinstance(e, E.BangHom):
            if "storage" not in self.under.capabilities:
                raise UnsupportedConstruct("S(f) in a slice needs the strength theta")
            x = d.inner
            theta = Prim("theta", Prod(a, E.Bang(x)), E.Bang(Prod(a, x)))
            return Comp(theta, BangHom(T(e.f)))
        if isinstance(e, E.DiffD):
            # tangent (0, u), point (a, x) for an input (a, (u, x))
            x = E.dom(e.f)
            xx = Prod(x, x)
            q0, q1 = Proj0(a, xx), Proj1(a, xx)
            tangent = Pair(Zero(Prod(a, xx), a), comp(q1, Proj0(x, x)))
            point = Pair(q0, comp(q1, Proj1(x, x)))
            return Comp(Pair(tangent, point), E.DiffD(T(e.f)))
        if isinstance(e, E.TensorHom):
            raise UnsupportedConstruct("tensor in a slice is not interpreted")
        if isinstance(e, E.Prim):
            if e.name in self.prims:
                return self.prims[e.name][2]
            return Comp(p1, e)
        raise TypeError(e)

    def compare(self, lhs, rhs, budget):
        return check_equation(self.under, self.translate(lhs), self.translate(rhs), budget)

    def kit(self):
        from ..suites.kits import SliceKit
        return SliceKit(self)


def slice_model(model: Model, ctx: E.ObjExpr) -> SliceModel:
    return SliceModel(model, ctx)
