"""polydiff checked against sympy as an independent symbolic oracle."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from catdiff.expr import Base, Comp, DiffD, Id, Pair, Prim, Prod, Proj0, Proj1
from catdiff.model import Budget, Equal, Unequal, check_equation
from catdiff.polydiff import (DimMismatch, Poly, PolyDiff, PolyMap, differentiate, eq_symbolic,
                              identity, is_homogeneous_linear, random_poly, taylor_check)


def to_sympy(p: Poly, xs):
    out = sympy.Integer(0)
    for k, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for x, e in zip(xs, k):
            term *= x ** e
        out += term
    return sympy.expand(out)


seeds = st.integers(0, 10 ** 6)
dims = st.integers(1, 3)


@settings(max_examples=60, deadline=None)
@given(dims, dims, st.integers(0, 4), seeds)
def test_derivative_matches_jacobian(n, m, deg, seed):
    f = random_poly(n, m, deg, seed)
    u = sympy.symbols(f"u0:{n}")
    x = sympy.symbols(f"x0:{n}")
    df = differentiate(f)
    assert (df.dom_dim, df.cod_dim) == (2 * n, m)
    for j, p in enumerate(f.components):
        fx = to_sympy(p, x)
        want = sympy.expand(sum(sympy.diff(fx, x[i]) * u[i] for i in range(n)))
        got = to_sympy(df.components[j], u + x)
        assert sympy.simplify(got - want) == 0


@settings(max_examples=60, deadline=None)
@given(dims, st.integers(0, 3), seeds, seeds)
def test_ring_ops_match_sympy(n, deg, s1, s2):
    p = random_poly(n, 1, deg, s1).components[0]
    q = random_poly(n, 1, deg, s2).components[0]
    xs = sympy.symbols(f"x0:{n}")
    P, Q = to_sympy(p, xs), to_sympy(q, xs)
    assert sympy.expand(to_sympy(p + q, xs) - (P + Q)) == 0
    assert sympy.expand(to_sympy(p * q, xs) - P * Q) == 0
    assert sympy.expand(to_sympy(p - q, xs) - (P - Q)) == 0
    assert (p - p).is_zero()


@settings(max_examples=40, deadline=None)
@given(dims, dims, dims, seeds)
def test_composition_matches_substitution(n, m, k, seed):
    f = random_poly(n, m, 2, seed)
    g = random_poly(m, k, 2, seed + 1)
    xs = sympy.symbols(f"x0:{n}")
    ys = sympy.symbols(f"y0:{m}")
    fx = [to_sympy(p, xs) for p in f.components]
    fg = f.then(g)
    for j, p in enumerate(g.components):
        want = to_sympy(p, ys).subs(dict(zip(ys, fx)), simultaneous=True)
        assert sympy.expand(to_sympy(fg.components[j], xs) - want) == 0


@settings(max_examples=40, deadline=None)
@given(dims, dims, st.integers(0, 4), seeds)
def test_taylor(n, m, deg, seed):
    assert isinstance(taylor_check(random_poly(n, m, deg, seed)), Equal)


def test_taylor_detects_wrong_derivative(monkeypatch):
    import catdiff.polydiff as pd
    f = PolyMap(1, 1, (Poly(1, {(2,): 1}),))
    monkeypatch.setattr(pd, "differentiate", lambda g: PolyMap(2, 1, (Poly(2, {(1, 1): 1}),)))
    assert isinstance(pd.taylor_check(f), Unequal)


@settings(max_examples=40, deadline=None)
@given(dims, st.integers(0, 3), seeds)
def test_evaluation_matches_sympy(n, deg, seed):
    p = random_poly(n, 1, deg, seed).components[0]
    xs = sympy.symbols(f"x0:{n}")
    pt = tuple(Fraction(seed % 7 - 3 + i, 2) for i in range(n))
    want = to_sympy(p, xs).subs({x: sympy.Rational(v.numerator, v.denominator) for x, v in zip(xs, pt)})
    assert sympy.Rational(p(pt).numerator, p(pt).denominator) == want


def test_eq_symbolic_witness_replays():
    f = PolyMap(2, 1, (Poly(2, {(1, 0): 1, (0, 1): 1}),))
    g = PolyMap(2, 1, (Poly(2, {(1, 0): 1}),))
    v = eq_symbolic(f, g)
    assert isinstance(v, Unequal)
    w = v.witness
    assert f(w.point)[w.component] != g(w.point)[w.component]
    assert isinstance(eq_symbolic(f, f), Equal)


def test_dim_mismatch():
    with pytest.raises(DimMismatch):
        PolyMap(2, 1, (Poly(3),))
    with pytest.raises(DimMismatch):
        identity(2) + identity(3)
    with pytest.raises(DimMismatch):
        identity(2).then(identity(3))


def test_linearity_predicate():
    assert is_homogeneous_linear(identity(3))
    assert not is_homogeneous_linear(PolyMap(1, 1, (Poly(1, {(2,): 1}),)))
    assert not is_homogeneous_linear(PolyMap(1, 1, (Poly(1, {(0,): 1}),)))


def test_random_poly_deterministic():
    assert random_poly(2, 2, 3, 11) == random_poly(2, 2, 3, 11)


def test_model_chain_rule():
    A = Base("A")
    m = PolyDiff().extend({"f": random_poly(2, 2, 3, 1), "g": random_poly(2, 2, 3, 2)})
    f, g = Prim("f", A, A), Prim("g", A, A)
    AA = Prod(A, A)
    lhs = DiffD(Comp(f, g))
    rhs = Comp(Pair(DiffD(f), Comp(Proj1(A, A), f)), DiffD(g))
    assert isinstance(check_equation(m, lhs, rhs, Budget.uniform(3)), Equal)
    # D[id] = pi0
    assert isinstance(check_equation(m, DiffD(Id(A)), Proj0(A, A), Budget.uniform(3)), Equal)
    assert m.dim(AA) == 4


@settings(max_examples=20, deadline=None)
@given(dims, dims, st.integers(0, 3), seeds)
def test_smooth_finite_difference_agrees(n, m, deg, seed):
    from catdiff.smooth import check_derivative, from_poly
    f = random_poly(n, m, deg, seed)
    assert check_derivative(from_poly(f), from_poly(differentiate(f)), seed=seed)


def test_smooth_rejects_wrong_derivative():
    from catdiff.smooth import SmoothMap, check_derivative
    sq = SmoothMap(1, 1, lambda x: [x[0] ** 2])
    wrong = SmoothMap(2, 1, lambda ux: [ux[0] * ux[1]])
    right = SmoothMap(2, 1, lambda ux: [2 * ux[0] * ux[1]])
    assert check_derivative(sq, right)
    assert not check_derivative(sq, wrong)
