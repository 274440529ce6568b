"""coKleisli, slice and split constructions, plus storage-level helpers."""
import inspect
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from catdiff.constructions import (CoKleisli, is_linear, InvalidSplitMap, NotBilinear, NotIdempotent,
                                   SplitModel, classify, derived, derived_names,
                                   reconstruct_d_tensor, slice_model, tensor_lift, UnknownDerived)
from catdiff.constructions import formulas as D
from catdiff.expr import (Bang, Base, Comp, Id, Pair, Prim, Prod, Proj0, Proj1, Tensor,
                          typecheck)
from catdiff.finrel import Bag, FinRel, InL, InR, PairT, Pt, TableRel
from catdiff.model import Budget, Equal, Unequal, check_equation

from strategies import table_pairs

A, B, C = Base("A"), Base("B"), Base("C")
a, b, b0 = Pt("a"), Pt("b"), Pt("b0")
BUD = Budget.uniform(5)


def const_b0(m=None):
    m = m or CoKleisli()
    return m.extend(generated={"k": (A, B, TableRel(predicate=lambda x, y: True,
                                                     fwd=lambda x: (b0,)))}), Prim("k", A, B)


def test_classify_constant_relates_singletons_only():
    m, k = const_b0()
    r = m.relation(classify(k), BUD)
    for x in m.base.enumerate(Bang(Bang(A)), 5):
        assert r.member(x, b0) == (len(x) == 1), x


def test_identity_is_eps():
    m = CoKleisli()
    r = m.relation(Id(A), BUD)
    for x in m.base.enumerate(Bang(A), 4):
        for y in (a, b):
            assert r.member(x, y) == (x == Bag([y]))


# brute-force coKleisli composition: split the input bag into nonempty parts
def _splits(m):
    items = list(m.items)
    seen = set()
    for labels in product(range(len(items)), repeat=len(items)):
        parts = [Bag([x for x, l in zip(items, labels) if l == i]) for i in range(len(items))]
        key = Bag([p for p in parts if len(p)])
        if key not in seen:
            seen.add(key)
            yield [p for p in parts if len(p)]


BAGS = FinRel().enumerate(Bang(A), 3)
NONEMPTY = [x for x in BAGS if len(x)]
PTS = [a, b]


@settings(max_examples=40, deadline=None)
@given(table_pairs(NONEMPTY, PTS), table_pairs(NONEMPTY, PTS))
def test_composition_matches_partition_oracle(f, g):
    m = CoKleisli().extend(generated={"f": (A, A, TableRel(pairs=f)),
                                      "g": (A, A, TableRel(pairs=g))})
    e = Comp(Prim("f", A, A), Prim("g", A, A))
    r = m.relation(e, Budget.uniform(4))
    for x in FinRel().enumerate(Bang(A), 4):
        for z in PTS:
            want = any(
                any((Bag(ys), z) in g for ys in product(*[[y for y in PTS if (p, y) in f]
                                                          for p in parts]))
                for parts in _splits(x)) if len(x) else False
            assert r.member(x, z) == want, (x, z)


def test_lifted_map_is_linear_constant_is_not():
    m = CoKleisli().extend_base({"swap": (A, A, TableRel(pairs=[(a, b), (b, a)]))})
    m, sw = m.lift("swap_s", Prim("swap", A, A))
    assert isinstance(is_linear(m, sw, Budget.uniform(4)), Equal)
    m2, k = const_b0()
    assert isinstance(is_linear(m2, k, Budget.uniform(3)), Unequal)


# ------------------------------------------------------------------ tensor lift

def test_tensor_lift_matches_pair_bag():
    m = CoKleisli()
    g = D.m_x(A, B)
    m2, gt = tensor_lift(m, g, Budget.uniform(5), name="gt")
    base = m.relation(g, Budget.uniform(5))
    lifted = m2.relation(gt, Budget.uniform(5))
    for x in (a, b):
        for y in m.base.enumerate(Bang(Prod(A, B)), 5):
            want = base.member(Bag([InL(x), InR(b0)]), y)
            assert lifted.member(Bag([PairT(x, b0)]), y) == want


def test_tensor_lift_rejects_nonlinear():
    m = CoKleisli().extend(generated={"k": (Prod(A, B), B, TableRel(
        predicate=lambda x, y: True, fwd=lambda x: (b0,)))})
    with pytest.raises(NotBilinear):
        tensor_lift(m, Prim("k", Prod(A, B), B), Budget.uniform(3))


def test_reconstructed_d_tensor_agrees():
    m = CoKleisli()
    m2, p = reconstruct_d_tensor(m, A, Budget.uniform(5))
    v = check_equation(m2, p, Prim("d_tensor", Tensor(A, Bang(A)), Bang(A)), Budget.uniform(4))
    assert isinstance(v, Equal), v


# ------------------------------------------------------------------ slice

@settings(max_examples=30, deadline=None)
@given(table_pairs(PTS, PTS))
def test_slice_translation_of_composite(g):
    fin = FinRel().extend({"g": (A, A, TableRel(pairs=g))})
    s = slice_model(fin, A)
    G = Prim("g", A, A)
    # a plain prim ignores the context
    assert s.translate(G) == Comp(Proj1(A, A), G)
    assert s.translate(Id(A)) == Proj1(A, A)
    lhs = Comp(G, G)
    v = check_equation(fin, s.translate(lhs), Comp(Proj1(A, A), lhs), Budget.uniform(4))
    assert isinstance(v, Equal)


def test_slice_register_checks_domain():
    s = slice_model(FinRel(), A)
    s2, p = s.register("q", A, A, Proj1(A, A))
    assert s2.knows("q", A, A)
    with pytest.raises(Exception):
        s.register("bad", A, A, Id(A))


def test_slice_capabilities():
    s = slice_model(CoKleisli(), A)
    assert "tensor-representation" not in s.capabilities
    assert "storage" in s.capabilities


# ------------------------------------------------------------------ split

def test_split_rejects_non_idempotent():
    m = CoKleisli().extend_base({"swap": (A, A, TableRel(pairs=[(a, b), (b, a)]))})
    m, sw = m.lift("swap_s", Prim("swap", A, A))
    with pytest.raises(NotIdempotent):
        SplitModel(m).add_object("X", A, sw)


def test_split_rejects_bad_map():
    m = CoKleisli().extend_base({"keep": (A, A, TableRel(pairs=[(a, a)])),
                                 "all": (A, A, TableRel(pairs=[(x, y) for x in PTS for y in PTS]))})
    m, keep = m.lift("keep_s", Prim("keep", A, A))
    m, al = m.lift("all_s", Prim("all", A, A))
    s = SplitModel(m).add_object("X", A, keep)
    X = Base("X")
    with pytest.raises(InvalidSplitMap):
        s.add_map("f", X, X, al)
    s2, f = s.add_map("f", X, X, keep)
    assert s2.knows("f", X, X)
    with pytest.raises(InvalidSplitMap):
        s.add_map("g", X, X, Id(B))


def test_split_identity_is_idempotent(split):
    assert split.translate(Id(C)) != Id(C)
    assert isinstance(check_equation(split, Comp(Id(C), Id(C)), Id(C), Budget.uniform(3)), Equal)


# ------------------------------------------------------------------ named formulas

def test_derived_names_typecheck():
    from catdiff.constructions.formulas import _TABLE
    for name in derived_names():
        n = len(inspect.signature(_TABLE[name]).parameters)
        typecheck(derived(name, *[A, B, C, A][:n]))


def test_unknown_derived():
    with pytest.raises(UnknownDerived):
        derived("no_such_map", A)
