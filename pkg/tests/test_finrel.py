"""FinRel against brute-force oracles written with Counter and itertools only."""
import pickle
from collections import Counter
from itertools import combinations_with_replacement, permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from catdiff.expr import (Bang, BangHom, Base, Comp, Id, Pair, Plus, Prim, Prod, Proj0, Tensor,
                          TensorHom, TensorUnit, Terminal, Zero)
from catdiff.finrel import (Bag, FinRel, InL, InR, PairT, Pt, Star, TableRel, nonempty_partitions,
                            partitions_with_k_parts)
from catdiff.model import Budget, Equal, check_equation

from strategies import table_pairs

A, B = Base("A"), Base("B")
M = FinRel()
a, b = Pt("a"), Pt("b")


def oracle_bags(elems, cap):
    """All multisets over elems with 1 + sum of grades <= cap."""
    out = set()
    for n in range(cap):
        for combo in combinations_with_replacement(elems, n):
            if 1 + sum(x.grade for x in combo) <= cap:
                out.add(Bag(combo))
    return out


def pairs(dom, cod, cap=3):
    return [(x, y) for x in M.enumerate(dom, cap) for y in M.enumerate(cod, cap)]


def mem(name, dom, cod, x, y, model=M):
    return model.member(Prim(name, dom, cod), x, y, Budget.uniform(6))


# ------------------------------------------------------------ enumeration

@pytest.mark.parametrize("cap", range(0, 7))
def test_bag_enumeration_matches_oracle(cap):
    assert set(M.enumerate(Bang(A), cap)) == oracle_bags([a, b], cap)


def test_bag_counts_small():
    # {}, {a}, {b}, {a,a}, {a,b}, {b,b}
    assert len(M.enumerate(Bang(A), 3)) == 6
    assert len(M.enumerate(Bang(Terminal()), 5)) == 1


@pytest.mark.parametrize("cap", range(1, 6))
def test_nested_bag_enumeration(cap):
    inner = M.enumerate(Bang(A), cap - 1)
    assert set(M.enumerate(Bang(Bang(A)), cap)) == oracle_bags(inner, cap)


def test_grades():
    assert Bag([a, b]).grade == 3
    assert InL(a).grade == 2
    assert PairT(a, Star()).grade == 2
    assert Bag([InR(Bag([a]))]).grade == 1 + 1 + 2


def test_enumeration_sorted_and_capped():
    xs = M.enumerate(Prod(A, Bang(B)), 4)
    assert xs == sorted(xs)
    assert all(x.grade <= 4 for x in xs)


def test_elements_pickle():
    x = Bag([InL(a), InR(Bag([b, b]))])
    assert pickle.loads(pickle.dumps(x)) == x


def test_bag_canonical_order():
    assert Bag([b, a, a]) == Bag([a, b, a])
    assert hash(Bag([b, a])) == hash(Bag([a, b]))


# ------------------------------------------------------------ structure maps

def test_eps_oracle():
    for x, y in pairs(Bang(A), A, 4):
        assert mem("eps", Bang(A), A, x, y) == (x.counts() == Counter([y]))


def _union(M_):
    c = Counter()
    for part in M_.items:
        c += part.counts()
    return c


@pytest.mark.parametrize("variant", ["standard", "no-empty-parts"])
def test_delta_oracle(variant):
    m = FinRel(delta_variant=variant)
    for x, y in pairs(Bang(A), Bang(Bang(A)), 5):
        want = _union(y) == x.counts()
        if variant != "standard":
            want = want and all(len(p) for p in y.items)
        assert mem("delta", Bang(A), Bang(Bang(A)), x, y, m) == want, (x, y)


def test_Delta_oracle():
    for x, y in pairs(Bang(A), Tensor(Bang(A), Bang(A)), 5):
        want = y.left.counts() + y.right.counts() == x.counts()
        assert mem("Delta", Bang(A), Tensor(Bang(A), Bang(A)), x, y) == want


def test_e_oracle():
    for x, y in pairs(Bang(A), TensorUnit(), 4):
        assert mem("e", Bang(A), TensorUnit(), x, y) == (len(x) == 0)


def test_d_tensor_is_bag_insert():
    for x, y in pairs(Tensor(A, Bang(A)), Bang(A), 4):
        want = y.counts() == x.right.counts() + Counter([x.left])
        assert mem("d_tensor", Tensor(A, Bang(A)), Bang(A), x, y) == want


def test_s2_oracle():
    for x, y in pairs(Bang(Prod(A, B)), Tensor(Bang(A), Bang(B)), 5):
        lefts = Counter(z.inner for z in x.items if isinstance(z, InL))
        rights = Counter(z.inner for z in x.items if isinstance(z, InR))
        want = (y.left.counts(), y.right.counts()) == (lefts, rights)
        assert mem("s2", Bang(Prod(A, B)), Tensor(Bang(A), Bang(B)), x, y) == want


def test_sing_oracle():
    for x, y in pairs(A, Bang(A), 4):
        assert mem("sing", A, Bang(A), x, y) == (y.counts() == Counter([x]))


def test_unknown_variant():
    with pytest.raises(ValueError):
        FinRel(delta_variant="weird")


# ------------------------------------------------------------ partitions

def _brute_partitions(m, k, allow_empty):
    """Multisets of k bags whose union is m, by brute-force assignment."""
    items = list(m.items)
    out = set()
    for labels in product(range(k), repeat=len(items)):
        parts = [Bag([x for x, l in zip(items, labels) if l == i]) for i in range(k)]
        if not allow_empty and any(len(p) == 0 for p in parts):
            continue
        out.add(Bag(parts))
    return out


@pytest.mark.parametrize("m", [Bag(), Bag([a]), Bag([a, a]), Bag([a, b, b]), Bag([a, a, b, b])])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("allow_empty", [True, False])
def test_partitions_oracle(m, k, allow_empty):
    got = set(partitions_with_k_parts(m, k, allow_empty))
    assert got == _brute_partitions(m, k, allow_empty)


def test_nonempty_partitions():
    got = set(nonempty_partitions(Bag([a, b])))
    assert {Bag(p) for p in got} == {Bag([Bag([a, b])]), Bag([Bag([a]), Bag([b])])}


# ------------------------------------------------------------ composite relations

XS = M.enumerate(Bang(A), 3)
YS = M.enumerate(A, 1)
ZS = M.enumerate(Bang(A), 3)


def _ext(**rels):
    return FinRel().extend({k: v for k, v in rels.items()})


@settings(max_examples=50, deadline=None)
@given(table_pairs(XS, YS), table_pairs(YS, ZS))
def test_composition_is_relational_join(p, q):
    m = _ext(p=(Bang(A), A, TableRel(pairs=p)), q=(A, Bang(A), TableRel(pairs=q)))
    e = Comp(Prim("p", Bang(A), A), Prim("q", A, Bang(A)))
    for x in XS:
        for z in ZS:
            want = any((x, y) in p and (y, z) in q for y in YS)
            assert m.member(e, x, z, Budget.uniform(3)) == want


@settings(max_examples=50, deadline=None)
@given(table_pairs(YS, YS))
def test_bang_hom_matches_bijection_oracle(p):
    m = _ext(p=(A, A, TableRel(pairs=p)))
    e = BangHom(Prim("p", A, A))
    bags = M.enumerate(Bang(A), 4)
    for x in bags:
        for y in bags:
            want = len(x) == len(y) and any(
                all((u, v) in p for u, v in zip(x.items, perm)) for perm in permutations(y.items))
            assert m.member(e, x, y, Budget.uniform(4)) == want


@settings(max_examples=40, deadline=None)
@given(table_pairs(YS, YS), table_pairs(YS, YS))
def test_pair_plus_tensor(p, q):
    m = _ext(p=(A, A, TableRel(pairs=p)), q=(A, A, TableRel(pairs=q)))
    P, Q = Prim("p", A, A), Prim("q", A, A)
    b3 = Budget.uniform(3)
    for x in YS:
        for y in YS:
            assert m.member(Plus(P, Q), x, y, b3) == ((x, y) in p or (x, y) in q)
            assert m.member(Pair(P, Q), x, InL(y), b3) == ((x, y) in p)
            assert m.member(Pair(P, Q), x, InR(y), b3) == ((x, y) in q)
    for x1, x2, y1, y2 in product(YS, repeat=4):
        want = (x1, y1) in p and (x2, y2) in q
        assert m.member(TensorHom(P, Q), PairT(x1, x2), PairT(y1, y2), b3) == want


@settings(max_examples=40, deadline=None)
@given(table_pairs(XS, YS), table_pairs(YS, YS), table_pairs(YS, ZS))
def test_composition_associative(p, q, r):
    m = _ext(p=(Bang(A), A, TableRel(pairs=p)), q=(A, A, TableRel(pairs=q)),
             r=(A, Bang(A), TableRel(pairs=r)))
    P, Q, R = Prim("p", Bang(A), A), Prim("q", A, A), Prim("r", A, Bang(A))
    v = check_equation(m, Comp(Comp(P, Q), R), Comp(P, Comp(Q, R)), Budget.uniform(3))
    assert isinstance(v, Equal)


def test_zero_and_identity():
    b3 = Budget.uniform(3)
    assert isinstance(check_equation(M, Plus(Id(A), Zero(A, A)), Id(A), b3), Equal)
    assert not M.member(Zero(A, A), a, a, b3)
    assert M.member(Proj0(A, B), InL(a), a, b3)
    assert not M.member(Proj0(A, B), InR(Pt("b0")), a, b3)


def test_predicate_relation():
    m = FinRel().extend({"k": (Bang(A), A, TableRel(predicate=lambda x, y: len(x) == 2 and y == a,
                                                    fwd=lambda x: (a,) if len(x) == 2 else ()))})
    k = Prim("k", Bang(A), A)
    assert m.member(k, Bag([a, b]), a)
    assert not m.member(k, Bag([a]), a)
