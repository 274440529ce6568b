"""Storage-level operations: classification, linearity, tensor lifts and
the reconstruction of the tensor deriving map from D."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .. import expr as E
from ..expr import Bang, BangHom, Comp, Id, Prim, Tensor, comp, prod_hom
from ..finrel import Bag, InL, InR, PairT, TableRel
from ..model import Budget, Equal, check_equation
from . import formulas as D
from .cokleisli import CoKleisli


class NotBilinear(Exception):
    def __init__(self, side, verdict):
        self.side, self.verdict = side, verdict
        super().__init__(f"not linear in the {side} argument: {verdict}")


def classify(f: E.MorExpr, context: Optional[E.ObjExpr] = None) -> E.MorExpr:
    """f#: S(X) -> Y, i.e. S(f) ; eps. With a context A (f: A x X -> Y) the
    slice form theta ; S(f) ; eps : A x S(X) -> Y is returned."""
    x, y = E.typecheck(f)
    if context is None:
        return Comp(BangHom(f), D.eps(y))
    return comp(D.theta(context, x.right), BangHom(f), D.eps(y))


def linear_equation(f: E.MorExpr):
    """(lhs, rhs) of eps ; f = S(f) ; eps."""
    x, y = E.typecheck(f)
    return Comp(D.eps(x), f), Comp(BangHom(f), D.eps(y))


def linear2_equation(f: E.MorExpr):
    """f: A x X -> Y linear in X: (1 x eps) ; f = theta ; S(f) ; eps."""
    d, y = E.typecheck(f)
    a, x = d.left, d.right
    return (Comp(prod_hom(Id(a), D.eps(x)), f),
            comp(D.theta(a, x), BangHom(f), D.eps(y)))


def linear1_equation(f: E.MorExpr):
    """f: A x X -> Y linear in A: (eps x 1) ; f = theta' ; S(f) ; eps."""
    d, y = E.typecheck(f)
    a, x = d.left, d.right
    return (Comp(prod_hom(D.eps(a), Id(x)), f),
            comp(D.theta_prime(a, x), BangHom(f), D.eps(y)))


def is_linear(model, f, budget: Budget):
    return check_equation(model, *linear_equation(f), budget)


def is_linear_in_slice(model, f, budget: Budget):
    return check_equation(model, *linear2_equation(f), budget)


def check_bilinear(model, g, budget: Budget):
    """Raise NotBilinear unless g: A x B -> Z is linear in each argument."""
    v2 = check_equation(model, *linear2_equation(g), budget)
    if not isinstance(v2, Equal):
        raise NotBilinear("second", v2)
    v1 = check_equation(model, *linear1_equation(g), budget)
    if not isinstance(v1, Equal):
        raise NotBilinear("first", v1)
    return v1, v2


def cokleisli_diff(model: CoKleisli, f: E.MorExpr) -> E.MorExpr:
    """Base map S(A x A) -> B denoted by D[f]."""
    return model.expand(E.DiffD(f))


def tensor_lift(model: CoKleisli, g: E.MorExpr, budget: Budget, name: Optional[str] = None,
                check: bool = True):
    """g: A x B -> Z bilinear  |->  g_tensor: A (x) B -> Z (linear).

    Computed directly: (a, b) -> z iff g relates {inl a, inr b} to z.
    Returns (extended model, storage-level Prim)."""
    d, z = E.typecheck(g, model.knows)
    a, b = d.left, d.right
    if check:
        check_bilinear(model, g, budget)
    rel = model.relation(g, budget)
    lift_name = name or f"lift_{E.structural_hash(g):016x}"

    def pre(p):
        return Bag([InL(p.left), InR(p.right)])

    def member(p, y):
        return rel.member(pre(p), y)

    def bwd(y):
        out = []
        for x in rel.backward(y):
            if len(x) == 2 and isinstance(x.items[0], InL) and isinstance(x.items[1], InR):
                out.append(PairT(x.items[0].inner, x.items[1].inner))
        return out

    t = TableRel(predicate=member,
                 fwd=(lambda p: rel.forward(pre(p))) if rel.fwd_finite else None,
                 bwd=bwd if rel.bwd_finite else None)
    base_name = lift_name + "_base"
    m = model.extend_base({base_name: (Tensor(a, b), z, t)})
    m, p = m.lift(lift_name, Prim(base_name, Tensor(a, b), z))
    return m, p


def reconstruction_map(a) -> E.MorExpr:
    """(eta x 1) ; m_x ; S(D[phi]) ; eps : A x S(A) -> S(A)."""
    return comp(prod_hom(D.eta(a), Id(Bang(a))), D.m_x(a, a),
                BangHom(D.d_x(a)), D.eps(Bang(a)))


def reconstruct_d_tensor(model: CoKleisli, a, budget: Budget):
    """Candidate d_tensor : A (x) S(A) -> S(A), as (model', Prim)."""
    return tensor_lift(model, reconstruction_map(a), budget, name="d_tensor_rebuilt")


@dataclass
class UniquenessResult:
    family_size: int
    satisfying: int
    agree: bool


def linear_candidates_agree(model: CoKleisli, target: E.MorExpr, pre: E.MorExpr,
                            goal: E.MorExpr, budget: Budget, dom_cap: int, cod_cap: int,
                            limit: int = 1 << 12) -> UniquenessResult:
    """Enumerate every linear storage map h = eps ; h0 where h0 is a relation on
    the (dom_cap, cod_cap) fragment, keep those with pre ; h = goal on the
    fragment, and check they all agree with ``target`` there."""
    d, c = E.typecheck(target)
    xs = model.base.enumerate(d, dom_cap)
    ys = model.base.enumerate(c, cod_cap)
    cells = [(x, y) for x in xs for y in ys]
    if 1 << len(cells) > limit:
        raise ValueError(f"candidate family too large: 2^{len(cells)}")
    want = model.relation(target, budget)
    satisfying = 0
    agree = True
    for bits in product((0, 1), repeat=len(cells)):
        pairs = [cell for cell, on in zip(cells, bits) if on]
        t = TableRel(pairs=pairs)
        mm = model.extend_base({"cand_base": (d, c, t)})
        mm, h = mm.lift("cand", Prim("cand_base", d, c))
        v = check_equation(mm, Comp(pre, h), goal, budget)
        if isinstance(v, Equal):
            satisfying += 1
            for x, y in cells:
                if (((x, y) in t.pairs) != want.member(Bag([x]), y)):
                    agree = False
    return UniquenessResult(1 << len(cells), satisfying, agree)
