"""The coKleisli category of the bag comonad on FinRel.

Storage-level maps A -> B are base relations S(A) -> B. ``expand`` turns a
storage-level expression into the base expression it denotes; checking is
then done by the base model on S(dom) x cod.
"""
from __future__ import annotations

from typing import Callable, Optional

from .. import expr as E
from ..expr import Bang, Comp, Id, ObjExpr, Prim, Prod, Tensor, TensorHom
from ..finrel import FinRel, TableRel
from ..model import RelationalModel, UnsupportedConstruct


class MissingPrimitive(UnsupportedConstruct):
    pass


def bp(name, d, c):
    return Prim(name, d, c)


# base-level building blocks ------------------------------------------------

def b_eps(a):
    return bp("eps", Bang(a), a)


def b_delta(a):
    return bp("delta", Bang(a), Bang(Bang(a)))


def b_s2(a, b):
    return bp("s2", Bang(Prod(a, b)), Tensor(Bang(a), Bang(b)))


def b_s2inv(a, b):
    return bp("s2inv", Tensor(Bang(a), Bang(b)), Bang(Prod(a, b)))


def b_d_tensor(a):
    return bp("d_tensor", Tensor(a, Bang(a)), Bang(a))


def b_psi(a, x):
    """psi = s2 ; (1 (x) eps) ; s2inv : S(A x S(X)) -> S(A x X) in the base."""
    return E.comp(b_s2(a, Bang(x)), TensorHom(Id(Bang(a)), b_eps(Bang(x))), b_s2inv(a, x))


def coklei_diff(f_base: E.MorExpr, a: ObjExpr) -> E.MorExpr:
    """D[f] := s2 ; (eps (x) 1) ; d_tensor ; f, a base map S(A x A) -> B."""
    return E.comp(b_s2(a, a), TensorHom(b_eps(a), Id(Bang(a))), b_d_tensor(a), f_base)


# storage-level primitive signatures and expansions ------------------------

def _exp_phi(d, c):
    return Id(Bang(d))


def _exp_eps(d, c):
    return Comp(b_eps(d), b_eps(c))


def _exp_theta(d, c):
    return b_psi(d.left, d.right.inner)


def _exp_phi_tensor(d, c):
    return Comp(b_s2(d.left, d.right), TensorHom(b_eps(d.left), b_eps(d.right)))


STORAGE_PRIMS: dict[str, tuple[Callable, Callable]] = {
    "phi": (lambda d, c: c == Bang(d), _exp_phi),
    "eps": (lambda d, c: d == Bang(c), _exp_eps),
    "theta": (lambda d, c: (isinstance(d, Prod) and isinstance(d.right, Bang)
                            and c == Bang(Prod(d.left, d.right.inner))), _exp_theta),
    "phi_tensor": (lambda d, c: isinstance(d, Prod) and c == Tensor(d.left, d.right), _exp_phi_tensor),
}

# base primitives that are linear and lift as eps ; p
LIFTABLE = ("a_x", "a_x_inv", "c_x", "diag", "codiag", "inl", "inr", "sing", "a_tensor",
            "a_tensor_inv", "c_tensor", "uL", "uR", "uL_inv", "uR_inv", "d_tensor",
            "s2", "s2inv", "s0", "s0inv", "Delta", "e")


class CoKleisli(RelationalModel):
    name = "cokleisli-finrel"
    capabilities = frozenset({"cartesian", "additive", "modality", "storage", "force",
                              "differential", "tensor-representation"})

    def __init__(self, base: Optional[FinRel] = None):
        self.base = base if base is not None else FinRel()
        if base is not None and base.delta_variant != "standard":
            self.name = f"cokleisli-finrel[{base.delta_variant}]"
        self.lifted: dict[str, tuple] = {}     # name -> (dom, cod, base expr)
        self._memo: dict = {}

    # -------------------------------------------------------- registry
    def extend(self, generated: Optional[dict] = None, lifted: Optional[dict] = None) -> "CoKleisli":
        """generated: name -> (dom, cod, TableRel on S(dom) x cod);
        lifted: name -> (dom, cod, base expression S(dom) -> cod)."""
        base_gen = {n: (Bang(d), c, t) for n, (d, c, t) in (generated or {}).items()}
        m = CoKleisli(self.base.extend(base_gen) if base_gen else self.base)
        m.name = self.name
        m.lifted = dict(self.lifted)
        for n, (d, c, _) in (generated or {}).items():
            m.lifted[n] = (d, c, Prim(n, Bang(d), c))
        m.lifted.update(lifted or {})
        return m

    def extend_base(self, generated: dict) -> "CoKleisli":
        """Same storage registry over a base with extra generated relations."""
        m = CoKleisli(self.base.extend(generated))
        m.name = self.name
        m.lifted = dict(self.lifted)
        return m

    def lift(self, name: str, base_expr: E.MorExpr) -> tuple["CoKleisli", Prim]:
        """Register the linear storage map eps ; base_expr under ``name``."""
        d, c = E.typecheck(base_expr, self.base.knows)
        m = self.extend(lifted={name: (d, c, Comp(b_eps(d), base_expr))})
        return m, Prim(name, d, c)

    def register_raw(self, name: str, dom: ObjExpr, cod: ObjExpr, base_expr: E.MorExpr):
        """Register an arbitrary base map S(dom) -> cod as a storage map."""
        m = self.extend(lifted={name: (dom, cod, base_expr)})
        return m, Prim(name, dom, cod)

    def knows(self, name, dom, cod):
        if name in self.lifted:
            d, c, _ = self.lifted[name]
            return (d, c) == (dom, cod)
        if name in STORAGE_PRIMS:
            return STORAGE_PRIMS[name][0](dom, cod) and self.base._objects_ok(dom) and self.base._objects_ok(cod)
        if name in LIFTABLE:
            return self.base.knows(name, dom, cod)
        return False

    # -------------------------------------------------------- expansion
    def expand(self, e: E.MorExpr) -> E.MorExpr:
        got = self._memo.get(e)
        if got is None:
            got = self._expand(e)
            self._memo[e] = got
        return got

    def _expand(self, e):
        X = self.expand
        d, c = E.typecheck(e)
        if isinstance(e, E.Id):
            return b_eps(e.o)
        if isinstance(e, E.Comp):
            return E.comp(b_delta(d), E.BangHom(X(e.f)), X(e.g))
        if isinstance(e, E.Pair):
            return E.Pair(X(e.f), X(e.g))
        if isinstance(e, (E.Proj0, E.Proj1)):
            return Comp(b_eps(d), e)
        if isinstance(e, E.ToTerminal):
            return E.ToTerminal(Bang(d))
        if isinstance(e, E.Zero):
            return E.Zero(Bang(d), c)
        if isinstance(e, E.Plus):
            return E.Plus(X(e.f), X(e.g))
        if isinstance(e, E.BangHom):
            a = E.dom(e.f)
            return E.comp(b_eps(Bang(a)), b_delta(a), E.BangHom(X(e.f)))
        if isinstance(e, E.DiffD):
            return coklei_diff(X(e.f), E.dom(e.f))
        if isinstance(e, E.Prim):
            if e.name in self.lifted:
                return self.lifted[e.name][2]
            if e.name in STORAGE_PRIMS and STORAGE_PRIMS[e.name][0](d, c):
                return STORAGE_PRIMS[e.name][1](d, c)
            if e.name in LIFTABLE and self.base.knows(e.name, d, c):
                return Comp(b_eps(d), e)
            raise MissingPrimitive(f"no storage-level primitive {e.name}")
        if isinstance(e, E.TensorHom):
            raise UnsupportedConstruct("tensor of storage-level maps is not interpreted")
        raise TypeError(e)

    # -------------------------------------------------------- checking
    def dom_elements(self, o, cap):
        return self.base.enumerate(Bang(o), cap)

    def cod_elements(self, o, cap):
        return self.base.enumerate(o, cap)

    def relation(self, e, budget):
        return self.base.relation(self.expand(e), budget)

    def fallback_hits(self):
        return self.base.fallback_hits()

    def kit(self):
        from ..suites.kits import StorageKit
        return StorageKit(self)


def cokleisli(base: Optional[FinRel] = None) -> CoKleisli:
    return CoKleisli(base)


def concrete_m_x(model: CoKleisli, a: ObjExpr, b: ObjExpr, name: str = "m_x_rel"):
    """The relational m_x: S(A) x S(B) -> S(A x B), relating the two-element
    bag {inl m1, inr m2} to the tagged union of m1 and m2."""
    from ..finrel.elements import Bag, InL, InR

    def fwd(x):
        if len(x) != 2:
            return ()
        l = [z for z in x.items if isinstance(z, InL)]
        r = [z for z in x.items if isinstance(z, InR)]
        if len(l) != 1 or len(r) != 1:
            return ()
        return (Bag([InL(p) for p in l[0].inner.items] + [InR(q) for q in r[0].inner.items]),)

    def bwd(y):
        m1 = Bag(z.inner for z in y.items if isinstance(z, InL))
        m2 = Bag(z.inner for z in y.items if isinstance(z, InR))
        return (Bag([InL(m1), InR(m2)]),)

    d = Prod(Bang(a), Bang(b))
    c = Bang(Prod(a, b))
    rel = TableRel(fwd=fwd, bwd=bwd)
    return model.extend(generated={name: (d, c, rel)}), Prim(name, d, c)
