"""Shared hypothesis strategies: well-typed expressions and random relations."""
from hypothesis import strategies as st

from catdiff.expr import (Bang, BangHom, Base, Comp, DiffD, Id, Pair, Plus, Prim, Prod, Proj0,
                          Proj1, Tensor, TensorHom, TensorUnit, Terminal, ToTerminal, Zero)

BASES = [Base("A"), Base("B"), Base("C")]


def objects(max_depth=2):
    leaves = st.sampled_from(BASES + [Terminal(), TensorUnit()])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(Prod, inner, inner),
            st.builds(Tensor, inner, inner),
            st.builds(Bang, inner)),
        max_leaves=4)


@st.composite
def morphisms(draw, dom=None, depth=3):
    """A random well-typed morphism out of ``dom``."""
    if dom is None:
        dom = draw(objects())
    choices = ["id", "prim", "zero", "bang-term"]
    if depth > 0:
        choices += ["comp", "pair", "plus", "S", "ox", "D"]
    if isinstance(dom, Prod):
        choices += ["p0", "p1"]
    kind = draw(st.sampled_from(choices))
    if kind == "id":
        return Id(dom)
    if kind == "prim":
        name = draw(st.sampled_from(["f", "g", "h2"]))
        return Prim(name, dom, draw(objects()))
    if kind == "zero":
        return Zero(dom, draw(objects()))
    if kind == "bang-term":
        return ToTerminal(dom)
    if kind == "p0":
        return Proj0(dom.left, dom.right)
    if kind == "p1":
        return Proj1(dom.left, dom.right)
    if kind == "comp":
        f = draw(morphisms(dom, depth - 1))
        from catdiff.expr import cod
        return Comp(f, draw(morphisms(cod(f), depth - 1)))
    if kind == "pair":
        return Pair(draw(morphisms(dom, depth - 1)), draw(morphisms(dom, depth - 1)))
    if kind == "plus":
        f = draw(morphisms(dom, depth - 1))
        from catdiff.expr import cod
        return Plus(f, Zero(dom, cod(f)))
    if kind == "S":
        x = draw(objects())
        return Comp(Prim("q", dom, Bang(x)), BangHom(draw(morphisms(x, depth - 1))))
    if kind == "ox":
        x, y = draw(objects()), draw(objects())
        return Comp(Prim("q", dom, Tensor(x, y)),
                    TensorHom(draw(morphisms(x, depth - 1)), draw(morphisms(y, depth - 1))))
    # D
    x = draw(objects())
    return Comp(Prim("q", dom, Prod(x, x)), DiffD(draw(morphisms(x, depth - 1))))


def table_pairs(xs, ys, min_size=0):
    """Random finite relations between two element lists."""
    cells = [(x, y) for x in xs for y in ys]
    return st.lists(st.sampled_from(cells), min_size=min_size, max_size=len(cells),
                    unique=True) if cells else st.just([])
